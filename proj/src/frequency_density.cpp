#include "kuramoto/frequency_density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto {

namespace {

constexpr double kSymTol = 1e-12;
constexpr double kMassTol = 1e-10;

// Piecewise-linear value of a breakpoint table at x (0 outside).
double table_eval(const std::vector<std::pair<double, double>>& table, double x) {
    if (table.empty() || x < table.front().first || x > table.back().first) return 0.0;
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
        const auto& [x0, y0] = table[i];
        const auto& [x1, y1] = table[i + 1];
        if (x <= x1) {
            if (x1 == x0) return y1;
            const double t = (x - x0) / (x1 - x0);
            return y0 + t * (y1 - y0);
        }
    }
    return table.back().second;
}

// Exact integral of the piecewise-linear table (trapezoid on breakpoints).
double table_integral(const std::vector<std::pair<double, double>>& table) {
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < table.size(); ++i) {
        s += 0.5 * (table[i].second + table[i + 1].second) * (table[i + 1].first - table[i].first);
    }
    return s;
}

} // namespace

double FrequencyDensity::total_mass() const {
    double s = 0.0;
    for (std::size_t k = 0; k < fibers(); ++k) s += fiber_mass(k);
    return s;
}

double FrequencyDensity::mean_omega() const {
    double s = 0.0;
    for (std::size_t k = 0; k < fibers(); ++k) s += nodes[k] * fiber_mass(k);
    return s;
}

void FrequencyDensity::validate() const {
    const std::size_t n = fibers();
    if (n == 0) throw Error("FrequencyDensity: empty");
    if (values.size() != n || domega.size() != n) {
        throw Error("FrequencyDensity: field size mismatch");
    }
    if (!std::isfinite(support_radius)) throw UnboundedSupport("support radius is not finite");
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(nodes[k]) || !std::isfinite(values[k])) {
            throw UnboundedSupport("non-finite node or value");
        }
        if (k > 0 && !(nodes[k] > nodes[k - 1])) {
            throw Error("FrequencyDensity: nodes not strictly increasing");
        }
        if (values[k] < 0.0) throw NegativeDensity("negative density value");
        if (std::abs(nodes[k]) > support_radius + kSymTol) {
            throw UnboundedSupport("node outside [-C, C]");
        }
    }
    // Mirror symmetry of nodes, values and cell widths.
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t r = n - 1 - k;
        if (std::abs(nodes[k] + nodes[r]) > kSymTol ||
            std::abs(values[k] - values[r]) > kSymTol * std::max(1.0, values[k]) ||
            std::abs(domega[k] - domega[r]) > kSymTol) {
            throw AsymmetricDensity("grid not symmetric about 0 at fiber " + std::to_string(k));
        }
    }
    if (std::abs(total_mass() - 1.0) > kMassTol) {
        throw NonUnitMass("quadrature mass " + std::to_string(total_mass()));
    }
    if (std::abs(mean_omega()) > kMassTol) {
        throw AsymmetricDensity("nonzero mean frequency");
    }
}

FrequencyDensity make_uniform_density(double support_radius, std::size_t cells) {
    if (!(support_radius > 0.0) || !std::isfinite(support_radius)) {
        throw UnboundedSupport("uniform law needs finite positive support radius");
    }
    const std::size_t side = std::max<std::size_t>(1, (cells + 1) / 2);
    const double h = support_radius / static_cast<double>(side);
    const double g = 1.0 / (2.0 * support_radius);

    FrequencyDensity d;
    d.support_radius = support_radius;
    d.value_at_zero = g;
    d.atomic = false;
    // Right-half midpoint cells, mirrored to the left for exact symmetry.
    std::vector<double> right;
    for (std::size_t j = 0; j < side; ++j) {
        right.push_back((static_cast<double>(j) + 0.5) * h);
    }
    for (std::size_t j = side; j-- > 0;) d.nodes.push_back(-right[j]);
    for (std::size_t j = 0; j < side; ++j) d.nodes.push_back(right[j]);
    d.values.assign(2 * side, g);
    d.domega.assign(2 * side, h);
    d.validate();
    return d;
}

FrequencyDensity make_atom_density(const std::vector<std::pair<double, double>>& omega_mass) {
    if (omega_mass.empty()) throw Error("atom law needs at least one atom");
    auto atoms = omega_mass;
    std::sort(atoms.begin(), atoms.end());

    FrequencyDensity d;
    d.atomic = true;
    d.value_at_zero = std::numeric_limits<double>::quiet_NaN();
    double mass = 0.0;
    for (const auto& [o, m] : atoms) {
        if (!std::isfinite(o)) throw UnboundedSupport("non-finite atom position");
        if (!(m > 0.0)) throw Error("atom mass must be positive");
        d.nodes.push_back(o);
        d.values.push_back(m);
        d.domega.push_back(1.0);
        mass += m;
    }
    // Symmetry must hold in the input; we refuse rather than repair it.
    const std::size_t n = atoms.size();
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t r = n - 1 - k;
        if (std::abs(d.nodes[k] + d.nodes[r]) > kSymTol ||
            std::abs(d.values[k] - d.values[r]) > kSymTol) {
            throw AsymmetricDensity("atom list not symmetric about 0");
        }
    }
    if (std::abs(mass - 1.0) > kMassTol) throw NonUnitMass("atom masses sum to " + std::to_string(mass));
    d.support_radius = std::max(std::abs(d.nodes.front()), std::abs(d.nodes.back()));
    d.validate();
    return d;
}

FrequencyDensity make_piecewise_density(const std::vector<std::pair<double, double>>& table,
                                        std::size_t cells) {
    if (table.size() < 2) throw Error("piecewise law needs at least two breakpoints");
    auto pts = table;
    std::sort(pts.begin(), pts.end());
    for (const auto& [x, y] : pts) {
        if (!std::isfinite(x) || !std::isfinite(y)) throw UnboundedSupport("non-finite breakpoint");
        if (y < 0.0) throw NegativeDensity("negative table value");
    }
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = n - 1 - i;
        if (std::abs(pts[i].first + pts[r].first) > kSymTol ||
            std::abs(pts[i].second - pts[r].second) > kSymTol * std::max(1.0, pts[i].second)) {
            throw AsymmetricDensity("breakpoint table not symmetric about 0");
        }
    }
    const double mass = table_integral(pts);
    if (std::abs(mass - 1.0) > kMassTol) {
        throw NonUnitMass("table integrates to " + std::to_string(mass));
    }
    const double radius = pts.back().first;
    if (!(radius > 0.0)) throw UnboundedSupport("degenerate support");

    // Breakpoints of the right half, with 0 inserted when absent so no cell
    // straddles a kink and the midpoint quadrature stays exact.
    std::vector<double> knots;
    knots.push_back(0.0);
    for (const auto& [x, y] : pts) {
        if (x > kSymTol) knots.push_back(x);
    }

    FrequencyDensity d;
    d.atomic = false;
    d.support_radius = radius;
    d.value_at_zero = table_eval(pts, 0.0);

    std::vector<double> right_nodes, right_vals, right_widths;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i];
        const double b = knots[i + 1];
        const double len = b - a;
        const auto n_cells = static_cast<std::size_t>(
            std::max<long long>(1, std::llround(static_cast<double>(cells) * len / (2.0 * radius))));
        const double h = len / static_cast<double>(n_cells);
        for (std::size_t j = 0; j < n_cells; ++j) {
            const double x = a + (static_cast<double>(j) + 0.5) * h;
            right_nodes.push_back(x);
            right_vals.push_back(table_eval(pts, x));
            right_widths.push_back(h);
        }
    }
    for (std::size_t j = right_nodes.size(); j-- > 0;) {
        d.nodes.push_back(-right_nodes[j]);
        d.values.push_back(right_vals[j]);
        d.domega.push_back(right_widths[j]);
    }
    for (std::size_t j = 0; j < right_nodes.size(); ++j) {
        d.nodes.push_back(right_nodes[j]);
        d.values.push_back(right_vals[j]);
        d.domega.push_back(right_widths[j]);
    }
    d.validate();
    return d;
}

} // namespace kuramoto
