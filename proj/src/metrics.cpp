#include "kuramoto/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto::metrics {

namespace {

constexpr double kLatTol = 1e-12;

void require_same_lattice(const QuantileField& a, const QuantileField& b) {
    if (a.m_eta() != b.m_eta() || a.fibers() != b.fibers()) {
        throw LatticeMismatch("quantile fields have different lattice shapes");
    }
    for (std::size_t j = 0; j < a.m_eta(); ++j) {
        if (std::abs(a.eta_fractions[j] - b.eta_fractions[j]) > kLatTol) {
            throw LatticeMismatch("eta fractions differ");
        }
    }
    for (std::size_t k = 0; k < a.fibers(); ++k) {
        if (std::abs(a.freq.nodes[k] - b.freq.nodes[k]) > kLatTol ||
            std::abs(a.freq.values[k] - b.freq.values[k]) > kLatTol ||
            std::abs(a.freq.domega[k] - b.freq.domega[k]) > kLatTol) {
            throw LatticeMismatch("Omega lattice differs at fiber " + std::to_string(k));
        }
    }
}

double powsgn(double x, double exponent) {
    if (x == 0.0) return 0.0;
    const double mag = (exponent == 0.0) ? 1.0 : std::pow(std::abs(x), exponent);
    return (x > 0.0) ? mag : -mag;
}

} // namespace

double wasserstein_p_fiber(const QuantileField& a, const QuantileField& b, std::size_t k,
                           double p) {
    require_same_lattice(a, b);
    if (!(p >= 1.0)) throw Error("wasserstein_p_fiber: p must be >= 1");
    const std::size_t me = a.m_eta();
    double max_abs = 0.0;
    for (std::size_t j = 0; j < me; ++j) {
        max_abs = std::max(max_abs, std::abs(a.at(j, k) - b.at(j, k)));
    }
    if (p == kPInfinity || max_abs == 0.0) return max_abs;
    // Normalized accumulation keeps large p away from under/overflow.
    const double w = a.freq.eta_extent(k) / static_cast<double>(me);
    double acc = 0.0;
    for (std::size_t j = 0; j < me; ++j) {
        acc += w * std::pow(std::abs(a.at(j, k) - b.at(j, k)) / max_abs, p);
    }
    return max_abs * std::pow(acc, 1.0 / p);
}

double modified_wp(const QuantileField& a, const QuantileField& b, double p) {
    require_same_lattice(a, b);
    if (!(p >= 1.0)) throw Error("modified_wp: p must be >= 1");
    double max_abs = 0.0;
    for (std::size_t i = 0; i < a.phi.size(); ++i) {
        max_abs = std::max(max_abs, std::abs(a.phi[i] - b.phi[i]));
    }
    if (p == kPInfinity || max_abs == 0.0) return max_abs;
    double acc = 0.0;
    for (std::size_t k = 0; k < a.fibers(); ++k) {
        const double w = a.sample_weight(k);
        for (std::size_t j = 0; j < a.m_eta(); ++j) {
            acc += w * std::pow(std::abs(a.at(j, k) - b.at(j, k)) / max_abs, p);
        }
    }
    return max_abs * std::pow(acc, 1.0 / p);
}

double w1_empirical(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    const std::size_t n = a.atoms.size();
    if (n == 0 || b.atoms.size() != n) {
        throw UnequalSupport("w1_empirical needs equal nonzero atom counts");
    }
    if (!a.uniform_weights() || !b.uniform_weights() ||
        std::abs(a.atoms[0].weight - b.atoms[0].weight) > 1e-12) {
        throw UnequalSupport("w1_empirical needs matching uniform weights");
    }
    const double w = a.atoms[0].weight;

    const auto single_fiber = [](const EmpiricalMeasure& m) {
        for (const auto& atom : m.atoms) {
            if (atom.omega != m.atoms[0].omega) return false;
        }
        return true;
    };
    if (single_fiber(a) && single_fiber(b)) {
        // One Omega value per measure: the cost in theta is convex, so the
        // sorted matching is the 1D optimum.
        std::vector<double> ta, tb;
        ta.reserve(n);
        tb.reserve(n);
        for (const auto& atom : a.atoms) ta.push_back(atom.theta);
        for (const auto& atom : b.atoms) tb.push_back(atom.theta);
        std::sort(ta.begin(), ta.end());
        std::sort(tb.begin(), tb.end());
        const double domega = a.atoms[0].omega - b.atoms[0].omega;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += std::hypot(ta[i] - tb[i], domega);
        return w * acc;
    }

    std::vector<double> cost(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cost[i * n + j] =
                std::hypot(a.atoms[i].theta - b.atoms[j].theta, a.atoms[i].omega - b.atoms[j].omega);
        }
    }
    return w * solve_assignment(cost, n);
}

double bl_distance_upper(const EmpiricalMeasure& m, double theta_c) {
    double acc = 0.0;
    for (const auto& a : m.atoms) acc += a.weight * std::abs(a.theta - theta_c);
    return acc;
}

double bl_distance_upper(const GridDensity& f, double theta_c) {
    double acc = 0.0;
    for (std::size_t k = 0; k < f.freq.fibers(); ++k) {
        double fib = 0.0;
        for (std::size_t m = 0; m < f.m_theta; ++m) {
            fib += std::abs(f.theta_center(m) - theta_c) * f.at(m, k);
        }
        acc += fib * f.dtheta() * f.freq.domega[k];
    }
    return acc;
}

double LatticeFunction::weighted_mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
    return acc;
}

double LatticeFunction::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

LatticeFunction difference_field(const QuantileField& a, const QuantileField& b) {
    require_same_lattice(a, b);
    LatticeFunction f;
    f.weights.reserve(a.phi.size());
    f.values.reserve(a.phi.size());
    for (std::size_t k = 0; k < a.fibers(); ++k) {
        const double w = a.sample_weight(k);
        for (std::size_t j = 0; j < a.m_eta(); ++j) {
            f.weights.push_back(w);
            f.values.push_back(a.at(j, k) - b.at(j, k));
        }
    }
    return f;
}

void project_mean_zero(LatticeFunction& f) {
    const double mean = f.weighted_mean();
    for (double& v : f.values) v -= mean;
}

void rescale_to_max(LatticeFunction& f, double max_abs) {
    const double current = f.max_abs();
    if (current == 0.0) return;
    const double s = max_abs / current;
    for (double& v : f.values) v *= s;
}

LemmaCheckResult lemma_cal_check(const LatticeFunction& f, double p, double tol) {
    if (f.values.size() != f.weights.size() || f.values.empty()) {
        throw Error("lemma_cal_check: malformed lattice function");
    }
    if (!(p >= 1.0)) throw Error("lemma_cal_check: p must be >= 1");
    if (f.max_abs() >= 0.5 * kPi) {
        throw RangeViolation("lemma_cal_check needs |field| < pi/2");
    }
    if (std::abs(f.weighted_mean()) > 1e-10) {
        throw MeanNotZero("lemma_cal_check needs a mean-zero field");
    }

    const std::size_t n = f.values.size();
    std::vector<double> a_pow(n);
    for (std::size_t i = 0; i < n; ++i) a_pow[i] = powsgn(f.values[i], p - 1.0);

    LemmaCheckResult r;
    for (std::size_t i = 0; i < n; ++i) {
        const double wi = f.weights[i];
        const double fi = f.values[i];
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row += f.weights[j] * (a_pow[i] - a_pow[j]) * std::sin(0.5 * (f.values[j] - fi));
        }
        r.lhs += wi * row;
    }
    for (std::size_t i = 0; i < n; ++i) {
        r.rhs -= f.weights[i] * std::pow(std::abs(f.values[i]), p);
    }
    r.rhs *= 2.0 / kPi;
    r.holds = r.lhs <= r.rhs + tol;
    return r;
}

RateFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values,
                       double t_begin, double t_end) {
    if (times.size() != values.size()) throw Error("fit_decay_rate: size mismatch");
    if (!(t_begin < t_end)) throw Error("fit_decay_rate: empty window");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < t_begin || times[i] > t_end) continue;
        if (!(values[i] > 0.0)) {
            throw NonPositiveValues("fit_decay_rate needs positive values in the window");
        }
        xs.push_back(times[i]);
        ys.push_back(std::log(values[i]));
    }
    if (xs.size() < 5) throw Error("fit_decay_rate: window holds fewer than 5 samples");

    const auto n = static_cast<double>(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    RateFit fit;
    fit.t_begin = t_begin;
    fit.t_end = t_end;
    fit.n_samples = xs.size();
    const double slope = sxy / sxx;
    fit.rate = -slope;
    fit.intercept = my - slope * mx;
    fit.r_squared = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

double solve_assignment(const std::vector<double>& cost, std::size_t n,
                        std::vector<std::size_t>* assignment) {
    if (cost.size() != n * n) throw Error("solve_assignment: cost is not n x n");
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(n, 0.0), v(n + 1, 0.0);
    std::vector<std::size_t> col_to_row(n + 1, kNone); // index n is the virtual column
    std::vector<std::size_t> way(n, 0);

    for (std::size_t row = 0; row < n; ++row) {
        col_to_row[n] = row;
        std::size_t j0 = n;
        std::vector<double> minv(n, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = col_to_row[j0];
            double delta = inf;
            std::size_t j1 = kNone;
            for (std::size_t j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double cur = cost[i0 * n + j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[col_to_row[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (col_to_row[j0] != kNone);
        while (j0 != n) {
            const std::size_t j1 = way[j0];
            col_to_row[j0] = col_to_row[j1];
            j0 = j1;
        }
    }

    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) total += cost[col_to_row[j] * n + j];
    if (assignment != nullptr) {
        assignment->assign(n, kNone);
        for (std::size_t j = 0; j < n; ++j) (*assignment)[col_to_row[j]] = j;
    }
    return total;
}

} // namespace kuramoto::metrics
