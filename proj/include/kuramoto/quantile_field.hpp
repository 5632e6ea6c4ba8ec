#pragma once

#include <cstddef>
#include <vector>

#include "kuramoto/frequency_density.hpp"
#include "kuramoto/grid_density.hpp"
#include "kuramoto/types.hpp"

namespace kuramoto {

/// Lagrangian state: phi[j, k] is the quantile of the per-fiber distribution
/// at level s_j * g(Omega_k), where s_j are the midpoint fractions. Column k
/// carries fiber mass g(Omega_k) * dOmega_k split evenly over the M_eta
/// samples, so each lattice point has quadrature weight
/// w_{j,k} = g(Omega_k) * dOmega_k / M_eta and the weights sum to one.
struct QuantileField {
    std::vector<double> eta_fractions; // s_j, midpoint fractions on (0, 1)
    FrequencyDensity freq;
    std::vector<double> phi; // [k * m_eta + j], radians
    double time = 0.0;

    std::size_t m_eta() const { return eta_fractions.size(); }
    std::size_t fibers() const { return freq.fibers(); }
    std::size_t lattice_size() const { return phi.size(); }

    double& at(std::size_t j, std::size_t k) { return phi[k * m_eta() + j]; }
    double at(std::size_t j, std::size_t k) const { return phi[k * m_eta() + j]; }

    /// Quadrature weight of one quantile sample of fiber k.
    double sample_weight(std::size_t k) const {
        return freq.fiber_mass(k) / static_cast<double>(m_eta());
    }
    double total_weight() const;

    bool monotone_columns() const;
    bool in_range() const; // all phi in (0, 2*pi)

    /// Weighted theta mean  sum w_{j,k} phi_{j,k}.
    double theta_mean() const;
    /// Weighted Omega mean  sum_k (fiber mass) Omega_k.
    double omega_mean() const;

    void validate() const;
};

/// One-sided endpoint quantiles of fiber k: phi(0, Omega_k) and
/// phi(g(Omega_k), Omega_k), recovered by linear extrapolation from the two
/// samples nearest the endpoint (midpoint sampling excludes the endpoints
/// themselves). A single-sample fiber is treated as a Dirac.
double phi_at_zero(const QuantileField& q, std::size_t k);
double phi_at_extent(const QuantileField& q, std::size_t k);

/// Initial quantile field of a grid density: per-fiber CDF inversion at the
/// midpoint levels.
QuantileField quantile_field_from_density(const GridDensity& f, std::size_t m_eta);

/// Recovers a grid density by histogramming the quantile mass onto M_theta
/// cells; the per-fiber marginal equals the fiber eta-extent by construction.
GridDensity density_from_quantile(const QuantileField& q, std::size_t m_theta);

/// Every atom with weight 1/N.
EmpiricalMeasure ensemble_to_empirical(const PhaseEnsemble& e);

/// Splits every atom into `factor` coincident copies of weight w/factor
/// (used to compare combs of different resolutions with equal atom counts).
EmpiricalMeasure refine_empirical(const EmpiricalMeasure& m, std::size_t factor);

/// Deterministic particle-in-cell comb: atom i sits at the joint quantile
/// level (i - 1/2)/N of the measure ordered fiber-major in Omega and by
/// theta inside each fiber.
PhaseEnsemble dirac_comb_from_density(const GridDensity& f, std::size_t n_atoms);

/// Exact quantile view of a uniform-weight comb whose fibers all carry the
/// same number of atoms: column k lists the sorted phases of fiber k. Throws
/// LatticeMismatch when the per-fiber counts differ.
QuantileField quantile_field_from_comb(const PhaseEnsemble& e);

/// Resamples the empirical per-fiber quantile functions of a comb onto the
/// lattice of `target_freq` with m_eta midpoint fractions. Every fiber of
/// target_freq must contain at least one atom.
QuantileField quantile_field_from_empirical(const EmpiricalMeasure& m,
                                            const FrequencyDensity& target_freq,
                                            std::size_t m_eta);

/// Monotone re-interpolation of the quantile columns onto a new fraction count.
QuantileField resample_fractions(const QuantileField& q, std::size_t new_m_eta);

} // namespace kuramoto
