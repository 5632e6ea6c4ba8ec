#pragma once

#include <cstddef>
#include <vector>

#include "kuramoto/grid_density.hpp"

namespace kuramoto::fv {

/// Global trig moments of the theta-marginal rho:
/// S = integral of sin(theta) rho, C = integral of cos(theta) rho.
struct TrigMoments {
    double s = 0.0;
    double c = 0.0;
};

TrigMoments trig_moments(const GridDensity& f);

/// Velocity of the nonlocal conservation law at (theta, Omega):
/// omega = Omega - K (C sin theta - S cos theta), which is the sine
/// convolution of the marginal expanded in the two moments.
double velocity_at(double theta, double omega_k, double coupling, const TrigMoments& m);

/// Velocity sampled at the cell centers, laid out like GridDensity::values.
std::vector<double> velocity_field(const GridDensity& f, double coupling);

/// Static speed bound max|Omega_k| + K used for step-size selection.
double max_speed_bound(const GridDensity& f, double coupling);

/// One conservative first-order upwind step per fiber with zero-flux cells at
/// theta = 0 and 2*pi (the support assumption keeps mass away from them).
/// Throws CflViolation when dt * max|omega| / dtheta > 0.9.
GridDensity fv_step(const GridDensity& f, double coupling, double dt);

struct FvParams {
    double coupling = 1.0;
    double cfl = 0.9;
    double t_end = 1.0;
};

struct FvTrajectory {
    std::vector<double> times;
    std::vector<double> mass;       // total mass(t)
    std::vector<double> theta_mean; // first theta moment(t)
    std::vector<GridDensity> snapshots; // only when requested
    GridDensity final_state;
};

/// Marches f0 to t_end with a fixed step chosen from the static speed bound,
/// sampling diagnostics every `sample_every` steps.
FvTrajectory fv_simulate(const GridDensity& f0, const FvParams& params,
                         std::size_t sample_every = 1, bool keep_snapshots = false);

} // namespace kuramoto::fv
