#include "kuramoto/quantile_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto {

double QuantileField::total_weight() const {
    double s = 0.0;
    for (std::size_t k = 0; k < fibers(); ++k) s += freq.fiber_mass(k);
    return s;
}

bool QuantileField::monotone_columns() const {
    const std::size_t me = m_eta();
    for (std::size_t k = 0; k < fibers(); ++k) {
        for (std::size_t j = 0; j + 1 < me; ++j) {
            if (at(j + 1, k) < at(j, k)) return false;
        }
    }
    return true;
}

bool QuantileField::in_range() const {
    for (double v : phi) {
        if (!(v > 0.0 && v < kTwoPi)) return false;
    }
    return true;
}

double QuantileField::theta_mean() const {
    double s = 0.0;
    for (std::size_t k = 0; k < fibers(); ++k) {
        const double w = sample_weight(k);
        double col = 0.0;
        for (std::size_t j = 0; j < m_eta(); ++j) col += at(j, k);
        s += w * col;
    }
    return s;
}

double QuantileField::omega_mean() const { return freq.mean_omega(); }

void QuantileField::validate() const {
    if (m_eta() == 0 || phi.size() != m_eta() * fibers()) {
        throw Error("QuantileField: shape mismatch");
    }
    for (std::size_t j = 0; j + 1 < m_eta(); ++j) {
        if (!(eta_fractions[j + 1] > eta_fractions[j])) {
            throw Error("QuantileField: fractions not increasing");
        }
    }
    if (eta_fractions.front() <= 0.0 || eta_fractions.back() >= 1.0) {
        throw Error("QuantileField: fractions must lie in (0, 1)");
    }
    if (!monotone_columns()) throw MonotonicityLoss("QuantileField: column not monotone");
    if (!in_range()) throw SupportEscape("QuantileField: phi outside (0, 2*pi)");
}

double phi_at_zero(const QuantileField& q, std::size_t k) {
    const std::size_t me = q.m_eta();
    if (me == 1) return q.at(0, k);
    const double s0 = q.eta_fractions[0];
    const double s1 = q.eta_fractions[1];
    return q.at(0, k) - s0 / (s1 - s0) * (q.at(1, k) - q.at(0, k));
}

double phi_at_extent(const QuantileField& q, std::size_t k) {
    const std::size_t me = q.m_eta();
    if (me == 1) return q.at(0, k);
    const double sa = q.eta_fractions[me - 2];
    const double sb = q.eta_fractions[me - 1];
    return q.at(me - 1, k) + (1.0 - sb) / (sb - sa) * (q.at(me - 1, k) - q.at(me - 2, k));
}

QuantileField quantile_field_from_density(const GridDensity& f, std::size_t m_eta) {
    QuantileField q;
    q.eta_fractions = uniform_fractions(m_eta);
    q.freq = f.freq;
    q.time = f.time;
    q.phi.assign(m_eta * f.freq.fibers(), 0.0);
    for (std::size_t k = 0; k < f.freq.fibers(); ++k) {
        const CdfColumn cdf = build_cdf(f, k);
        const std::vector<double> col = pseudo_inverse(cdf, q.eta_fractions);
        std::copy(col.begin(), col.end(), q.phi.begin() + static_cast<std::ptrdiff_t>(k * m_eta));
    }
    return q;
}

GridDensity density_from_quantile(const QuantileField& q, std::size_t m_theta) {
    GridDensity f;
    f.freq = q.freq;
    f.m_theta = m_theta;
    f.time = q.time;
    f.values.assign(m_theta * q.fibers(), 0.0);
    const double dth = f.dtheta();
    for (std::size_t k = 0; k < q.fibers(); ++k) {
        // Each quantile sample carries eta-mass g(Omega_k)/M_eta.
        const double cell_mass = q.freq.eta_extent(k) / static_cast<double>(q.m_eta());
        for (std::size_t j = 0; j < q.m_eta(); ++j) {
            auto cell = static_cast<std::size_t>(q.at(j, k) / dth);
            if (cell >= m_theta) cell = m_theta - 1;
            f.at(cell, k) += cell_mass / dth;
        }
    }
    return f;
}

EmpiricalMeasure ensemble_to_empirical(const PhaseEnsemble& e) {
    EmpiricalMeasure m;
    m.atoms.reserve(e.size());
    const double w = 1.0 / static_cast<double>(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
        m.atoms.push_back({e.theta[i], e.omega[i], w});
    }
    return m;
}

EmpiricalMeasure refine_empirical(const EmpiricalMeasure& m, std::size_t factor) {
    EmpiricalMeasure out;
    out.atoms.reserve(m.atoms.size() * factor);
    for (const auto& a : m.atoms) {
        const double w = a.weight / static_cast<double>(factor);
        for (std::size_t c = 0; c < factor; ++c) out.atoms.push_back({a.theta, a.omega, w});
    }
    return out;
}

PhaseEnsemble dirac_comb_from_density(const GridDensity& f, std::size_t n_atoms) {
    const std::size_t n_fib = f.freq.fibers();
    // Cumulative fiber masses delimit the level bands of the fiber-major order.
    std::vector<double> cumulative(n_fib + 1, 0.0);
    for (std::size_t k = 0; k < n_fib; ++k) {
        cumulative[k + 1] = cumulative[k] + f.freq.fiber_mass(k);
    }
    const double total = cumulative.back();

    std::vector<CdfColumn> cdfs;
    cdfs.reserve(n_fib);
    for (std::size_t k = 0; k < n_fib; ++k) cdfs.push_back(build_cdf(f, k));

    PhaseEnsemble e;
    e.time = f.time;
    e.theta.reserve(n_atoms);
    e.omega.reserve(n_atoms);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n_atoms; ++i) {
        const double level = total * (static_cast<double>(i) + 0.5) / static_cast<double>(n_atoms);
        while (k + 1 < n_fib && (level >= cumulative[k + 1] || f.freq.fiber_mass(k) == 0.0)) ++k;
        const double within = (level - cumulative[k]) / f.freq.fiber_mass(k);
        e.theta.push_back(cdfs[k].invert(within * cdfs[k].total()));
        e.omega.push_back(f.freq.nodes[k]);
    }
    return e;
}

QuantileField quantile_field_from_comb(const PhaseEnsemble& e) {
    if (e.size() == 0) throw EmptyMeasure("empty ensemble");
    // Group phases by exact frequency value.
    std::map<double, std::vector<double>> fibers;
    for (std::size_t i = 0; i < e.size(); ++i) fibers[e.omega[i]].push_back(e.theta[i]);
    const std::size_t n_fib = fibers.size();
    const std::size_t per_fiber = e.size() / n_fib;
    for (auto& [o, thetas] : fibers) {
        if (thetas.size() != per_fiber) {
            throw LatticeMismatch("comb fibers carry unequal atom counts");
        }
        std::sort(thetas.begin(), thetas.end());
    }

    QuantileField q;
    q.time = e.time;
    q.eta_fractions = uniform_fractions(per_fiber);
    q.freq.atomic = true;
    q.freq.value_at_zero = std::numeric_limits<double>::quiet_NaN();
    const double fiber_mass = 1.0 / static_cast<double>(n_fib);
    for (const auto& [o, thetas] : fibers) {
        q.freq.nodes.push_back(o);
        q.freq.values.push_back(fiber_mass);
        q.freq.domega.push_back(1.0);
        q.freq.support_radius = std::max(q.freq.support_radius, std::abs(o));
        q.phi.insert(q.phi.end(), thetas.begin(), thetas.end());
    }
    return q;
}

QuantileField quantile_field_from_empirical(const EmpiricalMeasure& m,
                                            const FrequencyDensity& target_freq,
                                            std::size_t m_eta) {
    QuantileField q;
    q.eta_fractions = uniform_fractions(m_eta);
    q.freq = target_freq;
    q.phi.assign(m_eta * target_freq.fibers(), 0.0);
    for (std::size_t k = 0; k < target_freq.fibers(); ++k) {
        std::vector<double> thetas;
        for (const auto& a : m.atoms) {
            if (a.omega == target_freq.nodes[k]) thetas.push_back(a.theta);
        }
        if (thetas.empty()) {
            throw EmptyMeasure("no atoms on fiber " + std::to_string(k));
        }
        std::sort(thetas.begin(), thetas.end());
        const auto n = static_cast<double>(thetas.size());
        for (std::size_t j = 0; j < m_eta; ++j) {
            // Step-function quantile with the inf convention.
            auto idx = static_cast<std::size_t>(q.eta_fractions[j] * n);
            if (idx >= thetas.size()) idx = thetas.size() - 1;
            q.at(j, k) = thetas[idx];
        }
    }
    return q;
}

QuantileField resample_fractions(const QuantileField& q, std::size_t new_m_eta) {
    QuantileField out;
    out.eta_fractions = uniform_fractions(new_m_eta);
    out.freq = q.freq;
    out.time = q.time;
    out.phi.assign(new_m_eta * q.fibers(), 0.0);
    const std::size_t me = q.m_eta();
    for (std::size_t k = 0; k < q.fibers(); ++k) {
        for (std::size_t j = 0; j < new_m_eta; ++j) {
            const double s = out.eta_fractions[j];
            double v;
            if (me == 1 || s <= q.eta_fractions.front()) {
                v = q.at(0, k);
            } else if (s >= q.eta_fractions.back()) {
                v = q.at(me - 1, k);
            } else {
                const auto it = std::upper_bound(q.eta_fractions.begin(), q.eta_fractions.end(), s);
                const auto hi = static_cast<std::size_t>(it - q.eta_fractions.begin());
                const double s0 = q.eta_fractions[hi - 1];
                const double s1 = q.eta_fractions[hi];
                const double t = (s - s0) / (s1 - s0);
                v = q.at(hi - 1, k) + t * (q.at(hi, k) - q.at(hi - 1, k));
            }
            out.at(j, k) = v;
        }
    }
    return out;
}

} // namespace kuramoto
