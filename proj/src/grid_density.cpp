#include "kuramoto/grid_density.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto {

double GridDensity::fiber_marginal(std::size_t k) const {
    double s = 0.0;
    for (std::size_t m = 0; m < m_theta; ++m) s += at(m, k);
    return s * dtheta();
}

double GridDensity::total_mass() const {
    double s = 0.0;
    for (std::size_t k = 0; k < freq.fibers(); ++k) s += fiber_marginal(k) * freq.domega[k];
    return s;
}

double GridDensity::theta_mean() const {
    double s = 0.0;
    for (std::size_t k = 0; k < freq.fibers(); ++k) {
        double fib = 0.0;
        for (std::size_t m = 0; m < m_theta; ++m) fib += theta_center(m) * at(m, k);
        s += fib * dtheta() * freq.domega[k];
    }
    return s;
}

void GridDensity::validate(double marginal_tol) const {
    if (m_theta == 0 || values.size() != m_theta * freq.fibers()) {
        throw Error("GridDensity: shape mismatch");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw Error("GridDensity: non-finite value");
        if (v < 0.0) throw NegativeDensity("GridDensity: negative value");
    }
    for (std::size_t k = 0; k < freq.fibers(); ++k) {
        const double want = freq.eta_extent(k);
        const double got = fiber_marginal(k);
        if (std::abs(got - want) > marginal_tol * std::max(1.0, want)) {
            throw Error("GridDensity: fiber " + std::to_string(k) +
                        " marginal off by " + std::to_string(got - want));
        }
    }
}

GridDensity make_product_density(const FrequencyDensity& freq, std::size_t m_theta,
                                 const std::function<double(double)>& theta_profile,
                                 const std::function<double(double)>& fiber_shift) {
    GridDensity f;
    f.freq = freq;
    f.m_theta = m_theta;
    f.values.assign(m_theta * freq.fibers(), 0.0);
    const double dth = f.dtheta();
    for (std::size_t k = 0; k < freq.fibers(); ++k) {
        const double shift = fiber_shift ? fiber_shift(freq.nodes[k]) : 0.0;
        double column_sum = 0.0;
        for (std::size_t m = 0; m < m_theta; ++m) {
            const double h = theta_profile(f.theta_center(m) - shift);
            if (h < 0.0) throw NegativeDensity("theta profile is negative");
            f.at(m, k) = h;
            column_sum += h * dth;
        }
        if (!(column_sum > 0.0)) throw EmptyMeasure("theta profile vanishes on the grid");
        // Normalize so the discrete marginal equals the fiber eta-extent exactly.
        const double scale = freq.eta_extent(k) / column_sum;
        for (std::size_t m = 0; m < m_theta; ++m) f.at(m, k) *= scale;
    }
    return f;
}

double CdfColumn::eval(double theta) const {
    if (theta <= 0.0) return 0.0;
    const std::size_t m_cells = at_edges.size() - 1;
    const double pos = theta / dtheta;
    if (pos >= static_cast<double>(m_cells)) return at_edges.back();
    const auto cell = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(cell);
    return at_edges[cell] + frac * (at_edges[cell + 1] - at_edges[cell]);
}

double CdfColumn::invert(double eta) const {
    const double total_mass = total();
    if (eta > total_mass * (1.0 + 1e-12) + 1e-300) {
        throw EmptyLevelSet("level above the fiber mass");
    }
    if (eta >= total_mass) {
        // At the top level the infimum sits at the upper edge of the last
        // strictly increasing segment.
        std::size_t e = at_edges.size() - 1;
        while (e > 0 && at_edges[e - 1] >= total_mass) --e;
        return static_cast<double>(e) * dtheta;
    }
    if (eta < 0.0) eta = 0.0;
    // First edge with F > eta; upper_bound skips any flat run at level eta,
    // landing on the left endpoint of the mass-carrying piece.
    const auto it = std::upper_bound(at_edges.begin(), at_edges.end(), eta);
    const auto e = static_cast<std::size_t>(it - at_edges.begin()); // >= 1, F[e] > eta
    const double lo = at_edges[e - 1];
    const double hi = at_edges[e];
    const double frac = (hi > lo) ? (eta - lo) / (hi - lo) : 0.0;
    return (static_cast<double>(e - 1) + frac) * dtheta;
}

CdfColumn build_cdf(const GridDensity& f, std::size_t k) {
    CdfColumn c;
    c.dtheta = f.dtheta();
    c.at_edges.assign(f.m_theta + 1, 0.0);
    double run = 0.0;
    for (std::size_t m = 0; m < f.m_theta; ++m) {
        const double v = f.at(m, k);
        if (v < 0.0) throw NegativeDensity("build_cdf: negative density");
        run += v * c.dtheta;
        c.at_edges[m + 1] = run;
    }
    return c;
}

std::vector<double> uniform_fractions(std::size_t m_eta) {
    std::vector<double> s(m_eta);
    for (std::size_t j = 0; j < m_eta; ++j) {
        s[j] = (static_cast<double>(j) + 0.5) / static_cast<double>(m_eta);
    }
    return s;
}

std::vector<double> pseudo_inverse(const CdfColumn& cdf, const std::vector<double>& fractions) {
    std::vector<double> phi(fractions.size());
    const double total = cdf.total();
    for (std::size_t j = 0; j < fractions.size(); ++j) {
        phi[j] = cdf.invert(fractions[j] * total);
    }
    return phi;
}

std::vector<double> pseudo_inverse(const CdfColumn& cdf, std::size_t m_eta) {
    return pseudo_inverse(cdf, uniform_fractions(m_eta));
}

} // namespace kuramoto
