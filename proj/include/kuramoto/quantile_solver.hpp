#pragma once

#include <cstddef>
#include <vector>

#include "kuramoto/quantile_field.hpp"

namespace kuramoto::quantile {

struct KineticParams {
    double coupling = 1.0; // K, 1/s
    double dt = 1e-3;      // s
    double t_end = 1.0;    // s

    static double default_dt(double coupling);

    /// dt/t_end sanity plus the mass normalization sum w_{j,k} = 1 within
    /// 1e-10 for the field being evolved.
    void validate(const QuantileField& q) const;
};

/// d phi_{j,k}/dt = Omega_k + K sum_{j',k'} w_{j',k'} sin(phi_{j',k'} - phi_{j,k}),
/// evaluated through the two global moments sum w sin phi, sum w cos phi.
std::vector<double> phi_rhs(const QuantileField& q, double coupling);

/// Literal quadrature double sum, O(L^2); must agree with phi_rhs to 1e-12.
std::vector<double> phi_rhs_pairwise(const QuantileField& q, double coupling);

/// One RK4 step; no invariant checks (the driver in evolve() performs them).
QuantileField step_rk4(const QuantileField& q, double coupling, double dt);

struct FieldTrajectory {
    std::vector<double> times;
    std::vector<double> diameter;   // field_diameter(q_t)
    std::vector<double> theta_mean; // sum w phi
    std::vector<QuantileField> snapshots; // only when requested
    QuantileField final_state;
};

/// RK4 time marching of the quantile field. Crossing quantiles mean the
/// quantile description broke down, so a per-column monotonicity violation
/// aborts with MonotonicityLoss rather than being repaired; any phi leaving
/// (0, 2*pi) aborts with SupportEscape.
FieldTrajectory evolve(const QuantileField& q0, const KineticParams& params,
                       std::size_t sample_every = 1, bool keep_snapshots = false);

/// D_theta of the field: max_k phi(g(Omega_k), Omega_k) - min_k phi(0, Omega_k)
/// with one-sided extrapolated endpoint quantiles.
double field_diameter(const QuantileField& q);

} // namespace kuramoto::quantile
