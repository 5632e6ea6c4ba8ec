#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "kuramoto/errors.hpp"
#include "kuramoto/grid_density.hpp"
#include "kuramoto/metrics.hpp"
#include "kuramoto/quantile_field.hpp"
#include "kuramoto/rng.hpp"

using namespace kuramoto;
using metrics::kPInfinity;

namespace {

double bump_pdf(double theta, double c, double a) {
    const double d = theta - c;
    if (std::abs(d) >= a) return 0.0;
    return (1.0 + std::cos(kPi * d / a)) / (2.0 * a);
}

QuantileField smooth_field(std::size_t m_eta, std::size_t m_omega, double center,
                           double halfwidth) {
    const FrequencyDensity g = make_uniform_density(0.5, m_omega);
    const GridDensity f = make_product_density(g, 512, [&](double th) {
        return bump_pdf(th, center, halfwidth);
    });
    return quantile_field_from_density(f, m_eta);
}

// Single fiber of prescribed eta-extent with all quantiles at one angle.
QuantileField dirac_fiber(double theta0, double extent, std::size_t m_eta) {
    QuantileField q;
    q.eta_fractions = uniform_fractions(m_eta);
    q.freq.nodes = {0.0};
    q.freq.values = {extent};
    q.freq.domega = {1.0};
    q.freq.atomic = true;
    q.freq.support_radius = 0.0;
    q.phi.assign(m_eta, theta0);
    return q;
}

EmpiricalMeasure atoms(std::initializer_list<WeightedAtom> list) {
    EmpiricalMeasure m;
    m.atoms = list;
    return m;
}

double brute_force_w1(const EmpiricalMeasure& a, const EmpiricalMeasure& b) {
    const std::size_t n = a.atoms.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cost += a.atoms[i].weight * std::hypot(a.atoms[i].theta - b.atoms[perm[i]].theta,
                                                   a.atoms[i].omega - b.atoms[perm[i]].omega);
        }
        best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

} // namespace

TEST_CASE("fiber distance basics: identity, shift, Dirac pairs") {
    const QuantileField q = smooth_field(32, 6, kPi, 1.0);
    for (double p : {1.0, 2.0, 7.0, kPInfinity}) {
        CHECK(metrics::wasserstein_p_fiber(q, q, 3, p) == 0.0);
    }

    // Shift on a unit-extent fiber: W_p = c for every p.
    const double c = 0.35;
    QuantileField a = dirac_fiber(2.0, 1.0, 16);
    QuantileField b = a;
    for (double& v : b.phi) v += c;
    // Turn the Diracs into spread fibers so more than one sample matters.
    for (std::size_t j = 0; j < a.m_eta(); ++j) {
        a.phi[j] += 0.01 * static_cast<double>(j);
        b.phi[j] += 0.01 * static_cast<double>(j);
    }
    for (double p : {1.0, 2.0, 7.0, kPInfinity}) {
        CHECK(metrics::wasserstein_p_fiber(a, b, 0, p) == doctest::Approx(c).epsilon(1e-13));
    }

    // Dirac fibers of mass m at distance |a - b|: W_p = |a - b| m^{1/p}.
    const double mass = 0.37;
    const QuantileField da = dirac_fiber(1.2, mass, 8);
    const QuantileField db = dirac_fiber(2.9, mass, 8);
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(metrics::wasserstein_p_fiber(da, db, 0, p) ==
              doctest::Approx(1.7 * std::pow(mass, 1.0 / p)).epsilon(1e-13));
    }
    CHECK(metrics::wasserstein_p_fiber(da, db, 0, kPInfinity) == doctest::Approx(1.7));
}

TEST_CASE("fiber distance is shift invariant and 1-homogeneous in the differences") {
    const QuantileField q1 = smooth_field(24, 4, kPi - 0.2, 0.9);
    QuantileField q2 = q1;
    SplitMix64 rng(11);
    for (std::size_t i = 0; i < q2.phi.size(); ++i) q2.phi[i] += rng.next_in(0.0, 0.05);

    for (double p : {1.0, 2.0, 5.0, kPInfinity}) {
        const double base = metrics::wasserstein_p_fiber(q1, q2, 2, p);
        QuantileField s1 = q1, s2 = q2;
        for (double& v : s1.phi) v += 0.4;
        for (double& v : s2.phi) v += 0.4;
        CHECK(metrics::wasserstein_p_fiber(s1, s2, 2, p) == doctest::Approx(base).epsilon(1e-12));

        QuantileField scaled = q1;
        for (std::size_t i = 0; i < scaled.phi.size(); ++i) {
            scaled.phi[i] = q1.phi[i] + 3.0 * (q2.phi[i] - q1.phi[i]);
        }
        CHECK(metrics::wasserstein_p_fiber(q1, scaled, 2, p) ==
              doctest::Approx(3.0 * base).epsilon(1e-12));
    }
}

TEST_CASE("modified metric: identity, uniform shift, monotonicity in p") {
    const QuantileField q1 = smooth_field(32, 8, kPi, 1.0);
    CHECK(metrics::modified_wp(q1, q1, 2.0) == 0.0);

    QuantileField shifted = q1;
    const double c = 0.21;
    for (double& v : shifted.phi) v += c;
    for (double p : {1.0, 2.0, 64.0, kPInfinity}) {
        CHECK(metrics::modified_wp(q1, shifted, p) == doctest::Approx(c).epsilon(1e-12));
    }

    // Power-mean monotonicity on the unit-mass lattice.
    QuantileField q2 = q1;
    SplitMix64 rng(5);
    for (double& v : q2.phi) v += rng.next_in(0.0, 0.4);
    double prev = 0.0;
    for (double p : {1.0, 2.0, 8.0, 64.0}) {
        const double cur = metrics::modified_wp(q1, q2, p);
        CHECK(cur >= prev - 1e-13);
        prev = cur;
    }
    CHECK(metrics::modified_wp(q1, q2, kPInfinity) >= prev - 1e-13);
}

TEST_CASE("W~_64 sits within 2% of W~_inf on gently varying smooth pairs") {
    SplitMix64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const QuantileField q1 = smooth_field(64, 8, kPi, 1.0);
        QuantileField q2 = q1;
        const double c = rng.next_in(0.1, 0.5);
        const double u = rng.next_in(0.5, 2.0);
        const double v = rng.next_in(0.5, 2.0);
        const double ph = rng.next_in(0.0, kTwoPi);
        for (std::size_t k = 0; k < q1.fibers(); ++k) {
            const double y = q1.freq.nodes[k] / q1.freq.support_radius;
            for (std::size_t j = 0; j < q1.m_eta(); ++j) {
                const double s = q1.eta_fractions[j];
                const double wiggle =
                    std::cos(kTwoPi * u * s + ph) * std::cos(kPi * v * y);
                q2.at(j, k) += c * (1.0 + 0.01 * wiggle);
            }
        }
        const double w64 = metrics::modified_wp(q1, q2, 64.0);
        const double winf = metrics::modified_wp(q1, q2, kPInfinity);
        CHECK(w64 >= 0.98 * winf);
        CHECK(w64 <= winf + 1e-13);
    }
}

TEST_CASE("triangle inequality holds on random field triples") {
    SplitMix64 rng(23);
    const QuantileField base = smooth_field(24, 6, kPi, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        QuantileField qa = base, qb = base, qc = base;
        for (std::size_t i = 0; i < base.phi.size(); ++i) {
            qa.phi[i] += rng.next_in(-0.3, 0.3);
            qb.phi[i] += rng.next_in(-0.3, 0.3);
            qc.phi[i] += rng.next_in(-0.3, 0.3);
        }
        for (double p : {1.0, 2.0, 3.5, kPInfinity}) {
            const double ab = metrics::modified_wp(qa, qb, p);
            const double bc = metrics::modified_wp(qb, qc, p);
            const double ac = metrics::modified_wp(qa, qc, p);
            CHECK(ac <= ab + bc + 1e-12);
            CHECK(ab == doctest::Approx(metrics::modified_wp(qb, qa, p)));
        }
    }
}

TEST_CASE("mismatched lattices are refused") {
    const QuantileField q1 = smooth_field(16, 4, kPi, 1.0);
    const QuantileField q2 = smooth_field(32, 4, kPi, 1.0);
    CHECK_THROWS_AS(metrics::modified_wp(q1, q2, 2.0), LatticeMismatch);
    const QuantileField q3 = smooth_field(16, 8, kPi, 1.0);
    CHECK_THROWS_AS(metrics::wasserstein_p_fiber(q1, q3, 0, 2.0), LatticeMismatch);
}

TEST_CASE("empirical W1: identity, single atoms, unequal supports") {
    const EmpiricalMeasure a = atoms({{1.0, 0.0, 0.5}, {2.0, 0.0, 0.5}});
    CHECK(metrics::w1_empirical(a, a) == 0.0);

    const EmpiricalMeasure one_a = atoms({{1.0, 0.0, 1.0}});
    const EmpiricalMeasure one_b = atoms({{2.0, 0.0, 1.0}});
    CHECK(metrics::w1_empirical(one_a, one_b) == doctest::Approx(1.0));

    const EmpiricalMeasure three = atoms({{1.0, 0.0, 1.0 / 3}, {2.0, 0.0, 1.0 / 3},
                                          {3.0, 0.0, 1.0 / 3}});
    CHECK_THROWS_AS(metrics::w1_empirical(a, three), UnequalSupport);

    const EmpiricalMeasure skew = atoms({{1.0, 0.0, 0.3}, {2.0, 0.0, 0.7}});
    CHECK_THROWS_AS(metrics::w1_empirical(a, skew), UnequalSupport);
}

TEST_CASE("empirical W1 equals the exhaustive-permutation optimum up to N = 6") {
    SplitMix64 rng(31);
    const double omegas[3] = {-0.5, 0.0, 0.5};
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next() % 6);
        EmpiricalMeasure a, b;
        for (std::size_t i = 0; i < n; ++i) {
            a.atoms.push_back({rng.next_in(0.3, 6.0), omegas[rng.next() % 3], 1.0 / n});
            b.atoms.push_back({rng.next_in(0.3, 6.0), omegas[rng.next() % 3], 1.0 / n});
        }
        const double exact = brute_force_w1(a, b);
        CHECK(metrics::w1_empirical(a, b) == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("single-fiber instances hit the sorted-matching optimum") {
    SplitMix64 rng(37);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 5);
        EmpiricalMeasure a, b;
        for (std::size_t i = 0; i < n; ++i) {
            a.atoms.push_back({rng.next_in(0.3, 6.0), 0.25, 1.0 / n});
            b.atoms.push_back({rng.next_in(0.3, 6.0), 0.25, 1.0 / n});
        }
        CHECK(metrics::w1_empirical(a, b) == doctest::Approx(brute_force_w1(a, b)).epsilon(1e-12));
    }
}

TEST_CASE("assignment solver agrees with brute force on random matrices") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next() % 6);
        std::vector<double> cost(n * n);
        for (double& c : cost) c = rng.next_in(0.0, 10.0);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        double best = std::numeric_limits<double>::infinity();
        do {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) acc += cost[i * n + perm[i]];
            best = std::min(best, acc);
        } while (std::next_permutation(perm.begin(), perm.end()));

        std::vector<std::size_t> assignment;
        const double got = metrics::solve_assignment(cost, n, &assignment);
        CHECK(got == doctest::Approx(best).epsilon(1e-12));
        double recon = 0.0;
        for (std::size_t i = 0; i < n; ++i) recon += cost[i * n + assignment[i]];
        CHECK(recon == doctest::Approx(got).epsilon(1e-12));
    }
}

TEST_CASE("first-moment bound: Dirac, symmetric pair, and the W1 comparison") {
    const EmpiricalMeasure dirac = atoms({{2.5, 0.0, 1.0}});
    CHECK(metrics::bl_distance_upper(dirac, 2.5) == 0.0);

    const EmpiricalMeasure pair = atoms({{2.0, 0.0, 0.5}, {3.0, 0.0, 0.5}});
    CHECK(metrics::bl_distance_upper(pair, 2.5) == doctest::Approx(0.5));

    // With all mass at Omega = 0 (the synchronization setting) the bound
    // coincides with the exact W1 to the limit Dirac.
    SplitMix64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 4 + static_cast<std::size_t>(rng.next() % 4);
        EmpiricalMeasure m, target;
        for (std::size_t i = 0; i < n; ++i) {
            m.atoms.push_back({rng.next_in(1.0, 5.0), 0.0, 1.0 / n});
            target.atoms.push_back({kPi, 0.0, 1.0 / n});
        }
        const double bl = metrics::bl_distance_upper(m, kPi);
        const double w1 = metrics::w1_empirical(m, target);
        CHECK(bl == doctest::Approx(w1).epsilon(1e-12));
    }
}

TEST_CASE("interaction inequality: zero field and two-block closed forms") {
    metrics::LatticeFunction zero;
    zero.weights.assign(10, 0.1);
    zero.values.assign(10, 0.0);
    const auto rz = metrics::lemma_cal_check(zero, 2.0);
    CHECK(rz.lhs == 0.0);
    CHECK(rz.rhs == 0.0);
    CHECK(rz.holds);

    for (double c : {0.2, 0.7, 1.2, 1.5}) {
        // Half the mass at +c, half at -c: lhs = -c sin c, rhs = -(2/pi) c^2.
        metrics::LatticeFunction f;
        f.weights.assign(8, 0.125);
        f.values.assign(8, c);
        for (int i = 4; i < 8; ++i) f.values[i] = -c;
        const auto r = metrics::lemma_cal_check(f, 2.0);
        CHECK(r.lhs == doctest::Approx(-c * std::sin(c)).epsilon(1e-12));
        CHECK(r.rhs == doctest::Approx(-(2.0 / kPi) * c * c).epsilon(1e-12));
        CHECK(r.holds);

        // Quarter mass on each block, half on zeros: extra cross terms
        // against the zero set.
        metrics::LatticeFunction fz;
        fz.weights.assign(8, 0.125);
        fz.values.assign(8, 0.0);
        fz.values[0] = fz.values[1] = c;
        fz.values[2] = fz.values[3] = -c;
        const auto rzb = metrics::lemma_cal_check(fz, 2.0);
        const double want_lhs =
            -4.0 * 0.25 * 0.25 * c * std::sin(c) - 4.0 * 0.25 * 0.5 * c * std::sin(0.5 * c);
        CHECK(rzb.lhs == doctest::Approx(want_lhs).epsilon(1e-12));
        CHECK(rzb.rhs == doctest::Approx(-(2.0 / kPi) * 0.5 * c * c).epsilon(1e-12));
        CHECK(rzb.holds);
    }
}

TEST_CASE("interaction inequality holds on random mean-zero fields") {
    SplitMix64 rng(47);
    for (int trial = 0; trial < 200; ++trial) {
        metrics::LatticeFunction f;
        const std::size_t n = 32;
        f.weights.assign(n, 1.0 / n);
        f.values.resize(n);
        for (double& v : f.values) v = rng.next_in(-1.0, 1.0);
        metrics::project_mean_zero(f);
        metrics::rescale_to_max(f, rng.next_in(0.1, 1.5));
        for (double p : {1.0, 2.0, 3.0, 5.0}) {
            CHECK(metrics::lemma_cal_check(f, p).holds);
        }
    }
}

TEST_CASE("interaction inequality rejects out-of-range or biased fields") {
    metrics::LatticeFunction wide;
    wide.weights.assign(4, 0.25);
    wide.values = {1.6, -1.6, 0.0, 0.0}; // 1.6 > pi/2
    CHECK_THROWS_AS(metrics::lemma_cal_check(wide, 2.0), RangeViolation);

    metrics::LatticeFunction biased;
    biased.weights.assign(4, 0.25);
    biased.values = {0.5, 0.5, 0.5, 0.4};
    CHECK_THROWS_AS(metrics::lemma_cal_check(biased, 2.0), MeanNotZero);
}

TEST_CASE("rate fitting: exact exponential, perturbed exponential, constants") {
    std::vector<double> t, clean, wobbly, flat;
    for (int i = 0; i <= 200; ++i) {
        const double ti = 0.05 * i;
        t.push_back(ti);
        clean.push_back(std::exp(-2.0 * ti));
        wobbly.push_back(std::exp(-2.0 * ti) * (1.0 + 0.01 * std::sin(ti)));
        flat.push_back(3.7);
    }
    const auto fit_clean = metrics::fit_decay_rate(t, clean, 0.0, 10.0);
    CHECK(std::abs(fit_clean.rate - 2.0) < 1e-9);
    CHECK(fit_clean.r_squared > 1.0 - 1e-12);

    const auto fit_wobbly = metrics::fit_decay_rate(t, wobbly, 0.0, 10.0);
    CHECK(std::abs(fit_wobbly.rate - 2.0) < 0.02);

    const auto fit_flat = metrics::fit_decay_rate(t, flat, 0.0, 10.0);
    CHECK(std::abs(fit_flat.rate) < 1e-12);

    std::vector<double> with_zero = clean;
    with_zero[10] = 0.0;
    CHECK_THROWS_AS(metrics::fit_decay_rate(t, with_zero, 0.0, 10.0), NonPositiveValues);
    CHECK_THROWS_AS(metrics::fit_decay_rate(t, clean, 0.0, 0.1), Error);
}
