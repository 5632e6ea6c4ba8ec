#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "kuramoto/errors.hpp"
#include "kuramoto/particle.hpp"
#include "kuramoto/presets.hpp"
#include "kuramoto/rng.hpp"

using namespace kuramoto;
using particle::ParticleParams;

namespace {

PhaseEnsemble random_ensemble(std::size_t n, double theta_lo, double theta_hi, double omega_max,
                              std::uint64_t seed) {
    SplitMix64 rng(seed);
    PhaseEnsemble e;
    for (std::size_t i = 0; i < n; ++i) {
        e.theta.push_back(rng.next_in(theta_lo, theta_hi));
        e.omega.push_back(rng.next_in(-omega_max, omega_max));
    }
    return e;
}

} // namespace

TEST_CASE("kuramoto rhs: decoupled system streams at its natural frequencies") {
    const PhaseEnsemble e = random_ensemble(17, 0.5, 5.5, 1.0, 1);
    const auto rhs = particle::kuramoto_rhs(e, 0.0);
    for (std::size_t i = 0; i < e.size(); ++i) CHECK(rhs[i] == doctest::Approx(e.omega[i]));
}

TEST_CASE("kuramoto rhs: two-oscillator hand evaluation") {
    PhaseEnsemble e;
    e.theta = {0.0, 0.5 * kPi};
    e.omega = {0.0, 0.0};
    const auto rhs = particle::kuramoto_rhs(e, 1.0);
    // -(1/2)[sin(0) + sin(-pi/2)] = 1/2 and its mirror.
    CHECK(rhs[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(rhs[1] == doctest::Approx(-0.5).epsilon(1e-14));
    const auto brute = particle::kuramoto_rhs_pairwise(e, 1.0);
    CHECK(brute[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(brute[1] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("kuramoto rhs: coupling vanishes on a fully synchronized state") {
    PhaseEnsemble e;
    e.theta.assign(40, 2.2);
    e.omega.assign(40, 0.0);
    for (std::size_t i = 0; i < e.size(); ++i) e.omega[i] = 0.3;
    const auto rhs = particle::kuramoto_rhs(e, 3.0);
    for (double v : rhs) CHECK(v == doctest::Approx(0.3).epsilon(1e-13));
}

TEST_CASE("reduced and pairwise couplings agree to 1e-12 relative on N = 1000") {
    const PhaseEnsemble e = random_ensemble(1000, 0.2, 6.0, 1.0, 2);
    const auto fast = particle::kuramoto_rhs(e, 1.7);
    const auto brute = particle::kuramoto_rhs_pairwise(e, 1.7);
    for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(std::abs(fast[i] - brute[i]) <= 1e-12 * std::max(1.0, std::abs(brute[i])));
    }
}

TEST_CASE("rk4 is exact on free streaming") {
    PhaseEnsemble e = random_ensemble(9, 1.0, 5.0, 0.5, 3);
    ParticleParams p;
    p.coupling = 0.0;
    p.dt = 1e-2;
    const PhaseEnsemble e0 = e;
    for (int s = 0; s < 100; ++s) e = particle::step_rk4(e, p);
    for (std::size_t i = 0; i < e.size(); ++i) {
        CHECK(e.theta[i] == doctest::Approx(e0.theta[i] + e0.omega[i] * 1.0).epsilon(1e-13));
    }
}

TEST_CASE("rk4 matches the two-body closed form tan(D/2) = tan(D0/2) exp(-Kt)") {
    const double k_coupling = 1.0;
    const double d0 = 2.0;
    auto run = [&](double dt) {
        PhaseEnsemble e;
        e.theta = {kPi - 0.5 * d0, kPi + 0.5 * d0};
        e.omega = {0.0, 0.0};
        ParticleParams p;
        p.coupling = k_coupling;
        p.dt = dt;
        const auto n = static_cast<std::size_t>(std::llround(1.0 / dt));
        for (std::size_t s = 0; s < n; ++s) e = particle::step_rk4(e, p);
        return e.theta[1] - e.theta[0];
    };
    const double exact = 2.0 * std::atan(std::tan(0.5 * d0) * std::exp(-k_coupling));
    CHECK(std::abs(run(1e-3) - exact) < 1e-8);

    // Global fourth order: halving dt cuts the error by at least 12x.
    const double err_coarse = std::abs(run(4e-3) - exact);
    const double err_fine = std::abs(run(2e-3) - exact);
    CHECK(err_coarse >= 12.0 * err_fine);
}

TEST_CASE("simulate: identical oscillators contract inside the two-sided envelope") {
    const FrequencyDensity g = make_atom_density({{0.0, 1.0}});
    const PhaseEnsemble e0 =
        harness::make_interval_ensemble(g, {{kPi - 1.25, kPi + 1.25}}, 64);
    ParticleParams p;
    p.coupling = 0.8;
    p.dt = 1e-3;
    p.t_end = 3.0;
    const auto rec = particle::simulate(e0, p, 10);
    const double d0 = rec.diameter.front();
    const double alpha = std::sin(d0) / d0;
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        const double t = rec.times[i];
        CHECK(rec.diameter[i] >= d0 * std::exp(-p.coupling * t) - 1e-6);
        CHECK(rec.diameter[i] <= d0 * std::exp(-p.coupling * alpha * t) + 1e-6);
        if (i > 0) CHECK(rec.diameter[i] <= rec.diameter[i - 1] + 1e-12);
    }
}

TEST_CASE("simulate: free streaming reproduces theta + omega t at every sample") {
    PhaseEnsemble e0 = random_ensemble(20, 2.0, 4.0, 0.4, 4);
    ParticleParams p;
    p.coupling = 0.0;
    p.dt = 1e-3;
    p.t_end = 2.0;
    const auto rec = particle::simulate(e0, p, 100, /*keep_snapshots=*/true);
    for (std::size_t s = 0; s < rec.snapshots.size(); ++s) {
        const double t = rec.times[s];
        for (std::size_t i = 0; i < e0.size(); ++i) {
            CHECK(std::abs(rec.snapshots[s].theta[i] - (e0.theta[i] + e0.omega[i] * t)) < 1e-10);
        }
    }
}

TEST_CASE("mean phase drifts exactly at the mean frequency") {
    PhaseEnsemble e0 = random_ensemble(100, 2.0, 4.5, 0.5, 5);
    const double omega_c = particle::mean_freq(e0);
    const double theta_c0 = particle::mean_phase(e0);
    ParticleParams p;
    p.coupling = 1.0;
    p.dt = 1e-3;
    p.t_end = 2.0;
    const auto rec = particle::simulate(e0, p, 50);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        CHECK(std::abs(rec.mean_phase[i] - (theta_c0 + omega_c * rec.times[i])) < 1e-10);
    }
}

TEST_CASE("antisymmetry conservation within 5e-10 per unit time at N = 1000") {
    PhaseEnsemble e0 = random_ensemble(1000, 1.0, 5.0, 1.0, 6);
    const double omega_c = particle::mean_freq(e0);
    const double theta_c0 = particle::mean_phase(e0);
    ParticleParams p;
    p.coupling = 1.3;
    p.dt = 1e-3;
    p.t_end = 1.0;
    const auto rec = particle::simulate(e0, p, 200);
    for (std::size_t i = 1; i < rec.times.size(); ++i) {
        const double drift =
            std::abs(rec.mean_phase[i] - theta_c0 - omega_c * rec.times[i]);
        CHECK(drift <= 5e-10 * rec.times[i]);
    }
}

TEST_CASE("trapping: reversed clusters stay inside the predicted region after t0") {
    const FrequencyDensity g = make_atom_density({{-0.5, 0.5}, {0.5, 0.5}});
    const PhaseEnsemble e0 = harness::make_interval_ensemble(
        g, {{kPi + 0.5, kPi + 1.0}, {kPi - 1.0, kPi - 0.5}}, 100);
    const double d0 = particle::phase_diameter(e0);
    const double d_omega = particle::freq_diameter(e0);
    CHECK(d0 == doctest::Approx(2.0));
    CHECK(d_omega == doctest::Approx(1.0));

    const auto est = particle::trapping_estimates(d0, d_omega, 2.0);
    ParticleParams p;
    p.coupling = 2.0;
    p.dt = 5e-4;
    p.t_end = 8.0;
    const auto rec = particle::simulate(e0, p, 20);
    for (std::size_t i = 0; i < rec.times.size(); ++i) {
        CHECK(rec.diameter[i] <= d0 + 1e-9);
        if (rec.times[i] >= est.t0) CHECK(rec.diameter[i] <= est.d_infty + 1e-3);
    }
}

TEST_CASE("phase and frequency diameters") {
    PhaseEnsemble one;
    one.theta = {1.0};
    one.omega = {0.0};
    CHECK(particle::phase_diameter(one) == 0.0);

    PhaseEnsemble two;
    two.theta = {1.0, 2.5};
    two.omega = {0.0, 0.0};
    CHECK(particle::phase_diameter(two) == doctest::Approx(1.5));

    const PhaseEnsemble r = random_ensemble(100, 0.0, kTwoPi - 1e-9, 1.0, 7);
    double brute = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            brute = std::max(brute, std::abs(r.theta[i] - r.theta[j]));
        }
    }
    CHECK(particle::phase_diameter(r) == doctest::Approx(brute));
}

TEST_CASE("order parameter hits its landmark values") {
    PhaseEnsemble sync;
    sync.theta.assign(12, 1.234);
    sync.omega.assign(12, 0.0);
    CHECK(particle::order_parameter(sync) == doctest::Approx(1.0));

    PhaseEnsemble roots;
    for (int i = 0; i < 8; ++i) {
        roots.theta.push_back(kTwoPi * i / 8.0);
        roots.omega.push_back(0.0);
    }
    CHECK(particle::order_parameter(roots) < 1e-12);

    PhaseEnsemble antipodal;
    antipodal.theta = {1.0, 1.0 + kPi};
    antipodal.omega = {0.0, 0.0};
    CHECK(particle::order_parameter(antipodal) < 1e-12);
}

TEST_CASE("critical coupling follows 2 / (pi g(0)) with the dilation scaling") {
    CHECK(particle::critical_coupling(make_uniform_density(1.0, 16)) ==
          doctest::Approx(4.0 / kPi).epsilon(1e-14));
    const FrequencyDensity tent =
        make_piecewise_density({{-1.0, 0.0}, {0.0, 1.0}, {1.0, 0.0}}, 32);
    CHECK(particle::critical_coupling(tent) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
    // Dilating g by lambda multiplies g(0) by lambda, so K_cr scales by 1/lambda.
    for (double lambda : {0.5, 2.0, 4.0}) {
        CHECK(particle::critical_coupling(make_uniform_density(1.0 / lambda, 16)) ==
              doctest::Approx((4.0 / kPi) / lambda).epsilon(1e-13));
    }
    CHECK_THROWS_AS(particle::critical_coupling(make_atom_density({{-0.5, 0.5}, {0.5, 0.5}})),
                    ZeroDensityAtOrigin);
}

TEST_CASE("trapping estimates: landmark values and the weak-coupling error") {
    const auto est = particle::trapping_estimates(2.0, 1.0, 2.0);
    CHECK(est.d_infty == doctest::Approx(kPi / 6.0).epsilon(1e-15));
    CHECK(est.t0 ==
          doctest::Approx((2.0 - kPi / 6.0) / (2.0 * std::sin(2.0) - 1.0)).epsilon(1e-15));

    // D_Omega -> 0 sends the trapped diameter to zero.
    CHECK(particle::trapping_estimates(2.0, 1e-9, 2.0).d_infty ==
          doctest::Approx(0.0).epsilon(1e-8));

    CHECK_THROWS_AS(particle::trapping_estimates(2.0, 1.0, 1.0), CouplingTooWeak);
    // K exactly at the threshold D_Omega / sin(D0) is still too weak.
    CHECK_THROWS_AS(particle::trapping_estimates(2.0, 1.0, 1.0 / std::sin(2.0)),
                    CouplingTooWeak);
}

TEST_CASE("under-resolved dynamics aborts with UnstableStep") {
    PhaseEnsemble e;
    e.theta = {1.0, 2.0};
    e.omega = {10.0, -10.0};
    ParticleParams p;
    p.coupling = 0.0;
    p.dt = 0.09;
    p.t_end = 1.0;
    CHECK_THROWS_AS(particle::simulate(e, p, 1), UnstableStep);
}

TEST_CASE("params validation rejects steps beyond the stability budget") {
    ParticleParams p;
    p.coupling = 4.0;
    p.dt = 0.05; // budget is 0.1 / 4 = 0.025
    p.t_end = 1.0;
    CHECK_THROWS_AS(p.validate(), Error);
    CHECK(ParticleParams::default_dt(4.0) == doctest::Approx(0.25e-3));
    CHECK(ParticleParams::default_dt(0.5) == doctest::Approx(1e-3));
}
