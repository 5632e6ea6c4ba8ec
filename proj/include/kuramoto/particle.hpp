#pragma once

#include <cstddef>
#include <vector>

#include "kuramoto/frequency_density.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto::particle {

struct ParticleParams {
    double coupling = 1.0; // K >= 0, 1/s
    double dt = 1e-3;      // s
    double t_end = 1.0;    // s

    /// Default step policy: 1e-3 * min(1, 1/K).
    static double default_dt(double coupling);

    /// dt > 0, t_end >= 0, and dt <= 0.1 / max(1, K) so RK4 stays in its
    /// stability region for the sinusoidal right-hand side.
    void validate() const;
};

/// d theta_i/dt = Omega_i - (K/N) sum_j sin(theta_i - theta_j), evaluated in
/// O(N) through the global moments sum_j sin theta_j, sum_j cos theta_j.
std::vector<double> kuramoto_rhs(const PhaseEnsemble& e, double coupling);

/// The literal O(N^2) pairwise sum; kept as an independent route that must
/// agree with the reduced form to 1e-12 relative.
std::vector<double> kuramoto_rhs_pairwise(const PhaseEnsemble& e, double coupling);

/// Classical fixed-step RK4 advance by params.dt. Frequencies are untouched
/// and phases are not wrapped: the support assumption keeps them in range,
/// and wrapping would corrupt diameters.
PhaseEnsemble step_rk4(const PhaseEnsemble& e, const ParticleParams& params);

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<double> diameter;    // D_theta(t)
    std::vector<double> order_param; // r(t)
    std::vector<double> mean_phase;  // theta_c(t)
    std::vector<PhaseEnsemble> snapshots; // only when requested
    PhaseEnsemble final_state;
};

/// Integrates to t_end, sampling diagnostics every `sample_every` steps
/// (always including t = 0 and the final time). Deterministic given inputs.
/// Throws UnstableStep when any |d theta/dt| * dt exceeds pi/4.
TrajectoryRecord simulate(const PhaseEnsemble& e0, const ParticleParams& params,
                          std::size_t sample_every = 1, bool keep_snapshots = false);

double phase_diameter(const PhaseEnsemble& e);
double freq_diameter(const PhaseEnsemble& e);

/// Modulus of the mean phasor, in [0, 1].
double order_parameter(const PhaseEnsemble& e);

double mean_phase(const PhaseEnsemble& e);
double mean_freq(const PhaseEnsemble& e);

/// K_cr = 2 / (pi g(0)); throws ZeroDensityAtOrigin when the law carries no
/// positive density value at the origin (atomic laws included).
double critical_coupling(const FrequencyDensity& g);

struct TrappingEstimate {
    double d_infty = 0.0; // arcsin(D_Omega / K), in (0, pi/2)
    double t0 = 0.0;      // (D_theta0 - D_infty) / (K sin D_theta0 - D_Omega)
};

/// Trapping-region prediction for 0 < D_theta0 < pi, D_Omega > 0 and
/// K > D_Omega / sin(D_theta0); throws CouplingTooWeak below the threshold.
TrappingEstimate trapping_estimates(double d_theta0, double d_omega, double coupling);

} // namespace kuramoto::particle
