#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace kuramoto {

/// Discretization of the natural-frequency law g(Omega): symmetric about 0,
/// mean zero, unit mass, compactly supported in [-C, C].
///
/// Two kinds are supported behind one interface:
///   - grid laws: `values[k]` is the density g(Omega_k) at the midpoint node
///     of a cell of width `domega[k]`; the fiber mass is values[k]*domega[k];
///   - atomic laws: `values[k]` is the mass of an atom at `nodes[k]` and
///     domega[k] == 1.
///
/// In both cases `values[k]` is the eta-extent of fiber k, i.e. the length of
/// the range of the per-fiber cumulative distribution, and
/// values[k]*domega[k] sums to one over k.
struct FrequencyDensity {
    std::vector<double> nodes;   // Omega_k, strictly increasing
    std::vector<double> values;  // g(Omega_k) (grid) or atom masses (atomic)
    std::vector<double> domega;  // cell widths (grid) or 1.0 (atomic)
    double support_radius = 0.0; // C with spt(g) in [-C, C]
    double value_at_zero = 0.0;  // analytic g(0); NaN for atomic laws
    bool atomic = false;

    std::size_t fibers() const { return nodes.size(); }
    double eta_extent(std::size_t k) const { return values[k]; }
    double fiber_mass(std::size_t k) const { return values[k] * domega[k]; }

    double total_mass() const;
    double mean_omega() const;

    /// Checks symmetry, normalization, zero mean and compact support; throws
    /// AsymmetricDensity / NonUnitMass / UnboundedSupport.
    void validate() const;
};

/// Uniform law g = 1/(2C) on [-C, C], discretized on `cells` midpoint cells
/// (rounded up to an even count so the grid is symmetric).
FrequencyDensity make_uniform_density(double support_radius, std::size_t cells = 32);

/// Purely atomic law from (position, mass) pairs. The list must be symmetric
/// about zero; construction fails rather than renormalizing.
FrequencyDensity make_atom_density(const std::vector<std::pair<double, double>>& omega_mass);

/// Piecewise-linear law from breakpoints (Omega_i, g_i). The table must be
/// symmetric and integrate to one. Cells are laid inside the linear segments
/// (split at 0), so the midpoint quadrature reproduces the exact integral.
FrequencyDensity make_piecewise_density(const std::vector<std::pair<double, double>>& table,
                                        std::size_t cells = 64);

} // namespace kuramoto
