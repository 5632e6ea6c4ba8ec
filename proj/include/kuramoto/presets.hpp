#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kuramoto/frequency_density.hpp"
#include "kuramoto/grid_density.hpp"
#include "kuramoto/rng.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto::harness {

/// Named compactly supported theta profiles, the reproducible-by-name
/// benchmark initial data. All are unit-mass on their support.
struct ThetaProfile {
    enum class Kind { Box, Tent, Bump, TwoBump };
    Kind kind = Kind::Bump;
    double center = kPi;
    double halfwidth = 1.0;
    // second component of TwoBump
    double center2 = 0.0;
    double halfwidth2 = 0.0;
    double mix = 0.5; // weight of the first bump

    double eval(double theta) const;
    double mean() const;
    double support_lo() const;
    double support_hi() const;
};

/// Spec strings: "box:c=pi,a=1", "tent:c=pi,a=0.8", "bump:c=pi,a=0.9",
/// "twobump:c1=pi-0.5,a1=0.6,c2=pi+0.5,a2=0.6,w=0.5". Numeric values accept
/// the forms "<x>", "pi", "pi+<x>", "pi-<x>".
ThetaProfile parse_theta_profile(const std::string& spec);

/// Frequency-law spec strings: "delta", "pair:o=0.5",
/// "uniform:C=0.5,M=32", "tent:C=1,M=64".
FrequencyDensity parse_frequency_spec(const std::string& spec);

/// Initial grid density from an analytic profile spec (product with the
/// frequency law on m_theta cells) or, with the "file:<path>" form, from a
/// GridDensity CSV whose sidecar carries its own discretization.
GridDensity make_initial_density(const std::string& spec, const FrequencyDensity& g,
                                 std::size_t m_theta);

/// n equispaced points including both endpoints (midpoint for n == 1).
std::vector<double> inclusive_grid(double lo, double hi, std::size_t n);

/// Ensemble with one phase interval per fiber, populated endpoint-inclusive
/// so initial diameters are exact. Atom counts are proportional to the fiber
/// masses and must come out integral.
PhaseEnsemble make_interval_ensemble(const FrequencyDensity& g,
                                     const std::vector<std::pair<double, double>>& intervals,
                                     std::size_t n_total);

/// Seeded random ensemble: frequencies by inverse CDF of the fiber masses,
/// phases uniform on [theta_lo, theta_hi).
PhaseEnsemble make_random_ensemble(const FrequencyDensity& g, std::size_t n, double theta_lo,
                                   double theta_hi, SplitMix64& rng);

} // namespace kuramoto::harness
