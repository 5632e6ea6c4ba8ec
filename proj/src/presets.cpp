#include "kuramoto/presets.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "kuramoto/errors.hpp"
#include "kuramoto/io.hpp"

namespace kuramoto::harness {

namespace {

double parse_value(const std::string& s) {
    if (s == "pi") return kPi;
    if (s.rfind("pi+", 0) == 0) return kPi + std::stod(s.substr(3));
    if (s.rfind("pi-", 0) == 0) return kPi - std::stod(s.substr(3));
    return std::stod(s);
}

struct SpecString {
    std::string name;
    std::map<std::string, double> args;

    double get(const std::string& key, double fallback) const {
        const auto it = args.find(key);
        return it == args.end() ? fallback : it->second;
    }
    double require(const std::string& key) const {
        const auto it = args.find(key);
        if (it == args.end()) throw Error("spec '" + name + "' is missing key '" + key + "'");
        return it->second;
    }
};

SpecString parse_spec(const std::string& spec) {
    SpecString out;
    const auto colon = spec.find(':');
    out.name = spec.substr(0, colon);
    if (colon == std::string::npos) return out;
    std::istringstream args(spec.substr(colon + 1));
    std::string item;
    while (std::getline(args, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw Error("bad spec item '" + item + "' in " + spec);
        out.args[item.substr(0, eq)] = parse_value(item.substr(eq + 1));
    }
    return out;
}

double bump_value(double theta, double center, double halfwidth) {
    const double d = theta - center;
    if (std::abs(d) >= halfwidth) return 0.0;
    return (1.0 + std::cos(kPi * d / halfwidth)) / (2.0 * halfwidth);
}

} // namespace

double ThetaProfile::eval(double theta) const {
    const double d = theta - center;
    switch (kind) {
        case Kind::Box:
            return std::abs(d) <= halfwidth ? 1.0 / (2.0 * halfwidth) : 0.0;
        case Kind::Tent:
            return std::abs(d) <= halfwidth ? (halfwidth - std::abs(d)) / (halfwidth * halfwidth)
                                            : 0.0;
        case Kind::Bump:
            return bump_value(theta, center, halfwidth);
        case Kind::TwoBump:
            return mix * bump_value(theta, center, halfwidth) +
                   (1.0 - mix) * bump_value(theta, center2, halfwidth2);
    }
    return 0.0;
}

double ThetaProfile::mean() const {
    return kind == Kind::TwoBump ? mix * center + (1.0 - mix) * center2 : center;
}

double ThetaProfile::support_lo() const {
    double lo = center - halfwidth;
    if (kind == Kind::TwoBump) lo = std::min(lo, center2 - halfwidth2);
    return lo;
}

double ThetaProfile::support_hi() const {
    double hi = center + halfwidth;
    if (kind == Kind::TwoBump) hi = std::max(hi, center2 + halfwidth2);
    return hi;
}

ThetaProfile parse_theta_profile(const std::string& spec) {
    const SpecString s = parse_spec(spec);
    ThetaProfile p;
    if (s.name == "box" || s.name == "tent" || s.name == "bump") {
        p.kind = s.name == "box" ? ThetaProfile::Kind::Box
                 : s.name == "tent" ? ThetaProfile::Kind::Tent
                                    : ThetaProfile::Kind::Bump;
        p.center = s.get("c", kPi);
        p.halfwidth = s.require("a");
    } else if (s.name == "twobump") {
        p.kind = ThetaProfile::Kind::TwoBump;
        p.center = s.require("c1");
        p.halfwidth = s.require("a1");
        p.center2 = s.require("c2");
        p.halfwidth2 = s.require("a2");
        p.mix = s.get("w", 0.5);
    } else {
        throw Error("unknown theta profile '" + s.name + "'");
    }
    if (!(p.halfwidth > 0.0) || (p.kind == ThetaProfile::Kind::TwoBump && !(p.halfwidth2 > 0.0))) {
        throw Error("theta profile needs positive halfwidths");
    }
    if (p.support_lo() <= 0.0 || p.support_hi() >= kTwoPi) {
        throw SupportEscape("theta profile support leaves (0, 2*pi)");
    }
    return p;
}

GridDensity make_initial_density(const std::string& spec, const FrequencyDensity& g,
                                 std::size_t m_theta) {
    if (spec.rfind("file:", 0) == 0) {
        GridDensity f = read_grid_density_csv(spec.substr(5));
        f.validate();
        return f;
    }
    const ThetaProfile prof = parse_theta_profile(spec);
    return make_product_density(g, m_theta, [prof](double th) { return prof.eval(th); });
}

FrequencyDensity parse_frequency_spec(const std::string& spec) {
    const SpecString s = parse_spec(spec);
    if (s.name == "delta") {
        return make_atom_density({{0.0, 1.0}});
    }
    if (s.name == "pair") {
        const double o = s.require("o");
        return make_atom_density({{-o, 0.5}, {o, 0.5}});
    }
    if (s.name == "uniform") {
        return make_uniform_density(s.require("C"),
                                    static_cast<std::size_t>(s.get("M", 32)));
    }
    if (s.name == "tent") {
        const double c = s.require("C");
        return make_piecewise_density({{-c, 0.0}, {0.0, 1.0 / c}, {c, 0.0}},
                                      static_cast<std::size_t>(s.get("M", 64)));
    }
    throw Error("unknown frequency law '" + s.name + "'");
}

std::vector<double> inclusive_grid(double lo, double hi, std::size_t n) {
    std::vector<double> xs(n);
    if (n == 1) {
        xs[0] = 0.5 * (lo + hi);
        return xs;
    }
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return xs;
}

PhaseEnsemble make_interval_ensemble(const FrequencyDensity& g,
                                     const std::vector<std::pair<double, double>>& intervals,
                                     std::size_t n_total) {
    if (intervals.size() != g.fibers()) {
        throw PreconditionViolated("one phase interval per fiber required");
    }
    PhaseEnsemble e;
    for (std::size_t k = 0; k < g.fibers(); ++k) {
        const double exact = g.fiber_mass(k) * static_cast<double>(n_total);
        const auto count = static_cast<std::size_t>(std::llround(exact));
        if (std::abs(exact - static_cast<double>(count)) > 1e-9 || count == 0) {
            throw PreconditionViolated("atom count does not split evenly over the fibers");
        }
        for (double th : inclusive_grid(intervals[k].first, intervals[k].second, count)) {
            e.theta.push_back(th);
            e.omega.push_back(g.nodes[k]);
        }
    }
    e.validate();
    return e;
}

PhaseEnsemble make_random_ensemble(const FrequencyDensity& g, std::size_t n, double theta_lo,
                                   double theta_hi, SplitMix64& rng) {
    std::vector<double> cumulative(g.fibers() + 1, 0.0);
    for (std::size_t k = 0; k < g.fibers(); ++k) {
        cumulative[k + 1] = cumulative[k] + g.fiber_mass(k);
    }
    PhaseEnsemble e;
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_double() * cumulative.back();
        std::size_t k = 0;
        while (k + 1 < g.fibers() && u >= cumulative[k + 1]) ++k;
        e.omega.push_back(g.nodes[k]);
        e.theta.push_back(rng.next_in(theta_lo, theta_hi));
    }
    return e;
}

} // namespace kuramoto::harness
