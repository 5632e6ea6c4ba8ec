#include "kuramoto/support.hpp"

#include <algorithm>
#include <cmath>

#include "kuramoto/errors.hpp"

namespace kuramoto {

SupportBox support_box(const EmpiricalMeasure& m) {
    if (m.atoms.empty()) throw EmptyMeasure("support_box: no atoms");
    SupportBox b{m.atoms[0].theta, m.atoms[0].theta, m.atoms[0].omega, m.atoms[0].omega};
    for (const auto& a : m.atoms) {
        b.theta_min = std::min(b.theta_min, a.theta);
        b.theta_max = std::max(b.theta_max, a.theta);
        b.omega_min = std::min(b.omega_min, a.omega);
        b.omega_max = std::max(b.omega_max, a.omega);
    }
    return b;
}

SupportBox support_box(const GridDensity& f, double mass_floor) {
    if (mass_floor < 0.0) throw Error("support_box: negative mass floor");
    const double peak = *std::max_element(f.values.begin(), f.values.end());
    if (!(peak > 0.0)) throw EmptyMeasure("support_box: density vanishes");
    const double threshold = mass_floor * peak;

    bool any = false;
    SupportBox b{};
    const double dth = f.dtheta();
    for (std::size_t k = 0; k < f.freq.fibers(); ++k) {
        const double half_width = f.freq.atomic ? 0.0 : 0.5 * f.freq.domega[k];
        for (std::size_t m = 0; m < f.m_theta; ++m) {
            if (f.at(m, k) <= threshold) continue;
            const double lo = f.theta_edge(m);
            const double hi = lo + dth;
            if (!any) {
                b = SupportBox{lo, hi, f.freq.nodes[k] - half_width, f.freq.nodes[k] + half_width};
                any = true;
            } else {
                b.theta_min = std::min(b.theta_min, lo);
                b.theta_max = std::max(b.theta_max, hi);
                b.omega_min = std::min(b.omega_min, f.freq.nodes[k] - half_width);
                b.omega_max = std::max(b.omega_max, f.freq.nodes[k] + half_width);
            }
        }
    }
    if (!any) throw EmptyMeasure("support_box: everything below the mass floor");
    return b;
}

SupportBox support_box(const QuantileField& q) {
    if (q.fibers() == 0 || q.m_eta() == 0) throw EmptyMeasure("support_box: empty field");
    SupportBox b{phi_at_zero(q, 0), phi_at_extent(q, 0), q.freq.nodes.front(), q.freq.nodes.back()};
    for (std::size_t k = 1; k < q.fibers(); ++k) {
        b.theta_min = std::min(b.theta_min, phi_at_zero(q, k));
        b.theta_max = std::max(b.theta_max, phi_at_extent(q, k));
    }
    return b;
}

} // namespace kuramoto
