#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "kuramoto/quantile_field.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto::metrics {

inline constexpr double kPInfinity = std::numeric_limits<double>::infinity();

/// Per-fiber Wasserstein-p distance of two quantile fields sharing the same
/// (eta, Omega) lattice: the L^p norm of phi1 - phi2 over the eta range
/// (0, g(Omega_k)); p = infinity gives the max over samples.
double wasserstein_p_fiber(const QuantileField& a, const QuantileField& b, std::size_t k,
                           double p);

/// Modified metric: L^p norm in Omega of the fiber distances, i.e. the
/// weighted lattice p-norm of phi1 - phi2; p = infinity gives the max.
double modified_wp(const QuantileField& a, const QuantileField& b, double p);

/// Exact Wasserstein-1 distance between two uniform combs with equal atom
/// counts, ground metric |(dtheta, dOmega)| on the strip. Uses the sorted-
/// theta matching when all atoms share a single Omega value (where it is the
/// 1D optimum) and an exact assignment solve otherwise.
/// Throws UnequalSupport for different counts or non-uniform weights.
double w1_empirical(const EmpiricalMeasure& a, const EmpiricalMeasure& b);

/// First absolute theta moment about theta_c: an upper bound for the bounded
/// Lipschitz distance to the Dirac at (theta_c, 0).
double bl_distance_upper(const EmpiricalMeasure& m, double theta_c);
double bl_distance_upper(const GridDensity& f, double theta_c);

/// Scalar function on an (eta, Omega) quadrature lattice with unit total
/// weight; the shape used by the interaction-inequality audit.
struct LatticeFunction {
    std::vector<double> weights;
    std::vector<double> values;

    double weighted_mean() const;
    double max_abs() const;
};

/// Difference field phi_a - phi_b on the shared lattice of two quantile
/// fields; throws LatticeMismatch.
LatticeFunction difference_field(const QuantileField& a, const QuantileField& b);

/// Subtracts the weighted mean.
void project_mean_zero(LatticeFunction& f);

/// Scales so that max|value| == max_abs (no-op on the zero field).
void rescale_to_max(LatticeFunction& f, double max_abs);

struct LemmaCheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Evaluates the quadrature form of the interaction inequality
///   sum_{a,b} w_a w_b [ |F_a|^{p-1} sgn F_a - |F_b|^{p-1} sgn F_b ]
///             * sin((F_b - F_a)/2)  <=  -(2/pi) sum_a w_a |F_a|^p
/// for a mean-zero field with |F| < pi/2. Throws RangeViolation or
/// MeanNotZero when the hypotheses fail.
LemmaCheckResult lemma_cal_check(const LatticeFunction& f, double p, double tol = 1e-10);

struct RateFit {
    double rate = 0.0;      // lambda in value ~ exp(-lambda t)
    double intercept = 0.0; // fitted log-value at t = 0
    double r_squared = 0.0;
    double t_begin = 0.0;
    double t_end = 0.0;
    std::size_t n_samples = 0;
};

/// Least squares of log(value) against t over the window [t_begin, t_end];
/// requires at least 5 samples in the window and positive values
/// (NonPositiveValues otherwise).
RateFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                       double t_begin, double t_end);

/// Exact minimum-cost assignment on a dense n x n cost matrix (row-major),
/// deterministic Jonker-Volgenant shortest augmenting paths. Returns the
/// optimal total cost; `assignment`, when non-null, receives the column of
/// each row.
double solve_assignment(const std::vector<double>& cost, std::size_t n,
                        std::vector<std::size_t>* assignment = nullptr);

} // namespace kuramoto::metrics
