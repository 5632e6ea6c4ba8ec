#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "kuramoto/frequency_density.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto {

/// Eulerian tensor-grid density f(theta_m, Omega_k): theta is discretized by
/// M_theta uniform cells on [0, 2*pi) with values at cell centers, Omega by
/// the fibers of a FrequencyDensity. Values are probability densities per
/// (rad * fiber measure), so the theta-quadrature of fiber k equals the
/// fiber's eta-extent g(Omega_k).
struct GridDensity {
    FrequencyDensity freq;
    std::size_t m_theta = 0;
    std::vector<double> values; // [k * m_theta + m]
    double time = 0.0;

    double dtheta() const { return kTwoPi / static_cast<double>(m_theta); }
    double theta_center(std::size_t m) const { return (static_cast<double>(m) + 0.5) * dtheta(); }
    double theta_edge(std::size_t m) const { return static_cast<double>(m) * dtheta(); }

    double& at(std::size_t m, std::size_t k) { return values[k * m_theta + m]; }
    double at(std::size_t m, std::size_t k) const { return values[k * m_theta + m]; }

    /// Quadrature of fiber k over theta.
    double fiber_marginal(std::size_t k) const;
    double total_mass() const;
    /// First theta moment of the full measure.
    double theta_mean() const;

    /// Nonnegativity and the per-fiber marginal constraint.
    void validate(double marginal_tol = 1e-8) const;
};

/// Product density f(theta, Omega) = g(Omega) * h(theta - shift(Omega)); the
/// theta profile is sampled at cell centers and normalized per fiber so the
/// marginal constraint holds exactly on the grid.
GridDensity make_product_density(const FrequencyDensity& freq, std::size_t m_theta,
                                 const std::function<double(double)>& theta_profile,
                                 const std::function<double(double)>& fiber_shift = {});

/// Per-fiber cumulative distribution F(theta) sampled at the theta cell
/// edges; piecewise linear in between.
struct CdfColumn {
    double dtheta = 0.0;
    std::vector<double> at_edges; // F at edges m*dtheta, m = 0..M; F[0] = 0

    double total() const { return at_edges.back(); }

    /// Piecewise-linear evaluation of F at theta in [0, 2*pi].
    double eval(double theta) const;

    /// Pseudo-inverse phi(eta) = inf { theta : F(theta) > eta }. Flat
    /// stretches of F at level eta collapse to their right edge, which is the
    /// left endpoint of the support piece that carries the next mass.
    /// Throws EmptyLevelSet for eta above the total mass.
    double invert(double eta) const;
};

/// Builds the per-fiber CDF of fiber k; throws NegativeDensity.
CdfColumn build_cdf(const GridDensity& f, std::size_t k);

/// Midpoint sample fractions s_j = (j - 1/2) / m_eta on (0, 1).
std::vector<double> uniform_fractions(std::size_t m_eta);

/// Quantiles of a CDF column at levels s_j * F.total().
std::vector<double> pseudo_inverse(const CdfColumn& cdf, const std::vector<double>& fractions);
std::vector<double> pseudo_inverse(const CdfColumn& cdf, std::size_t m_eta);

} // namespace kuramoto
