#pragma once

#include <cstddef>
#include <vector>

namespace kuramoto {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// State of the N-oscillator system: phases (rad) and natural frequencies
/// (rad/s). Frequencies are constant along trajectories; phases live on the
/// lift of the circle, so they are only required to be in [0, 2*pi) at
/// construction time and are wrapped at output, never during integration.
struct PhaseEnsemble {
    std::vector<double> theta;
    std::vector<double> omega;
    double time = 0.0;

    std::size_t size() const { return theta.size(); }

    /// Checks the construction invariants (matching sizes, theta in [0, 2*pi)).
    void validate() const;
};

struct WeightedAtom {
    double theta = 0.0;
    double omega = 0.0;
    double weight = 0.0;
};

/// Weighted Dirac comb on [0, 2*pi) x R.
struct EmpiricalMeasure {
    std::vector<WeightedAtom> atoms;

    double total_mass() const;

    /// True when every atom carries exactly the same weight (to 1e-12).
    bool uniform_weights() const;

    /// Probability-measure invariants: positive weights, unit total mass
    /// within 1e-12, theta in [0, 2*pi).
    void validate() const;
};

/// Tight bounding box of the support of a state in the (theta, omega) strip.
struct SupportBox {
    double theta_min = 0.0;
    double theta_max = 0.0;
    double omega_min = 0.0;
    double omega_max = 0.0;

    double theta_diameter() const { return theta_max - theta_min; }
    double omega_diameter() const { return omega_max - omega_min; }
};

} // namespace kuramoto
