#include "kuramoto/particle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto::particle {

namespace {

// rhs_i = Omega_i + K (S cos theta_i - C sin theta_i) with the mean moments
// S = (1/N) sum sin theta_j, C = (1/N) sum cos theta_j.
void rhs_into(const std::vector<double>& theta, const std::vector<double>& omega,
              double coupling, std::vector<double>& out) {
    const std::size_t n = theta.size();
    double s = 0.0;
    double c = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        s += std::sin(theta[j]);
        c += std::cos(theta[j]);
    }
    const double inv_n = 1.0 / static_cast<double>(n);
    s *= inv_n;
    c *= inv_n;
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = omega[i] + coupling * (s * std::cos(theta[i]) - c * std::sin(theta[i]));
    }
}

} // namespace

double ParticleParams::default_dt(double coupling) {
    return 1e-3 * std::min(1.0, 1.0 / std::max(coupling, 1e-12));
}

void ParticleParams::validate() const {
    if (!(coupling >= 0.0)) throw Error("ParticleParams: coupling must be >= 0");
    if (!(dt > 0.0)) throw Error("ParticleParams: dt must be positive");
    if (!(t_end >= 0.0)) throw Error("ParticleParams: t_end must be >= 0");
    if (dt > 0.1 / std::max(1.0, coupling) + 1e-15) {
        throw Error("ParticleParams: dt exceeds the RK4 stability budget 0.1/max(1, K)");
    }
}

std::vector<double> kuramoto_rhs(const PhaseEnsemble& e, double coupling) {
    std::vector<double> out;
    rhs_into(e.theta, e.omega, coupling, out);
    return out;
}

std::vector<double> kuramoto_rhs_pairwise(const PhaseEnsemble& e, double coupling) {
    const std::size_t n = e.size();
    std::vector<double> out(n);
    const double k_over_n = coupling / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            acc += std::sin(e.theta[i] - e.theta[j]);
        }
        out[i] = e.omega[i] - k_over_n * acc;
    }
    return out;
}

PhaseEnsemble step_rk4(const PhaseEnsemble& e, const ParticleParams& params) {
    const std::size_t n = e.size();
    const double dt = params.dt;
    std::vector<double> k1, k2, k3, k4;
    std::vector<double> tmp(n);

    rhs_into(e.theta, e.omega, params.coupling, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = e.theta[i] + 0.5 * dt * k1[i];
    rhs_into(tmp, e.omega, params.coupling, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = e.theta[i] + 0.5 * dt * k2[i];
    rhs_into(tmp, e.omega, params.coupling, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = e.theta[i] + dt * k3[i];
    rhs_into(tmp, e.omega, params.coupling, k4);

    PhaseEnsemble out;
    out.omega = e.omega;
    out.time = e.time + dt;
    out.theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.theta[i] = e.theta[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

TrajectoryRecord simulate(const PhaseEnsemble& e0, const ParticleParams& params,
                          std::size_t sample_every, bool keep_snapshots) {
    params.validate();
    if (e0.size() == 0) throw EmptyMeasure("simulate: empty ensemble");
    if (sample_every == 0) sample_every = 1;

    const auto n_steps = static_cast<std::size_t>(std::ceil(params.t_end / params.dt - 1e-9));
    TrajectoryRecord rec;
    auto sample = [&](const PhaseEnsemble& e) {
        rec.times.push_back(e.time);
        rec.diameter.push_back(phase_diameter(e));
        rec.order_param.push_back(order_parameter(e));
        rec.mean_phase.push_back(mean_phase(e));
        if (keep_snapshots) rec.snapshots.push_back(e);
    };

    PhaseEnsemble e = e0;
    sample(e);
    std::vector<double> k1, k2, k3, k4, tmp(e.size());
    const double dt = params.dt;
    for (std::size_t step = 0; step < n_steps; ++step) {
        rhs_into(e.theta, e.omega, params.coupling, k1);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (std::abs(k1[i]) * dt > 0.25 * kPi) {
                throw UnstableStep("|dtheta/dt|*dt > pi/4 at t = " + std::to_string(e.time));
            }
        }
        for (std::size_t i = 0; i < e.size(); ++i) tmp[i] = e.theta[i] + 0.5 * dt * k1[i];
        rhs_into(tmp, e.omega, params.coupling, k2);
        for (std::size_t i = 0; i < e.size(); ++i) tmp[i] = e.theta[i] + 0.5 * dt * k2[i];
        rhs_into(tmp, e.omega, params.coupling, k3);
        for (std::size_t i = 0; i < e.size(); ++i) tmp[i] = e.theta[i] + dt * k3[i];
        rhs_into(tmp, e.omega, params.coupling, k4);
        for (std::size_t i = 0; i < e.size(); ++i) {
            e.theta[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        e.time = e0.time + static_cast<double>(step + 1) * dt;
        if ((step + 1) % sample_every == 0 || step + 1 == n_steps) sample(e);
    }
    rec.final_state = std::move(e);
    return rec;
}

double phase_diameter(const PhaseEnsemble& e) {
    const auto [lo, hi] = std::minmax_element(e.theta.begin(), e.theta.end());
    return *hi - *lo;
}

double freq_diameter(const PhaseEnsemble& e) {
    const auto [lo, hi] = std::minmax_element(e.omega.begin(), e.omega.end());
    return *hi - *lo;
}

double order_parameter(const PhaseEnsemble& e) {
    double s = 0.0;
    double c = 0.0;
    for (double th : e.theta) {
        s += std::sin(th);
        c += std::cos(th);
    }
    return std::sqrt(s * s + c * c) / static_cast<double>(e.size());
}

double mean_phase(const PhaseEnsemble& e) {
    double s = 0.0;
    for (double th : e.theta) s += th;
    return s / static_cast<double>(e.size());
}

double mean_freq(const PhaseEnsemble& e) {
    double s = 0.0;
    for (double o : e.omega) s += o;
    return s / static_cast<double>(e.size());
}

double critical_coupling(const FrequencyDensity& g) {
    if (g.atomic || !(g.value_at_zero > 0.0)) {
        throw ZeroDensityAtOrigin("critical coupling needs g(0) > 0");
    }
    return 2.0 / (kPi * g.value_at_zero);
}

TrappingEstimate trapping_estimates(double d_theta0, double d_omega, double coupling) {
    if (!(d_theta0 > 0.0 && d_theta0 < kPi)) {
        throw Error("trapping_estimates: D_theta0 must lie in (0, pi)");
    }
    if (!(d_omega > 0.0)) throw Error("trapping_estimates: D_Omega must be positive");
    if (!(coupling > d_omega / std::sin(d_theta0))) {
        throw CouplingTooWeak("K <= D_Omega / sin(D_theta0)");
    }
    TrappingEstimate est;
    est.d_infty = std::asin(d_omega / coupling);
    est.t0 = (d_theta0 > est.d_infty)
                 ? (d_theta0 - est.d_infty) / (coupling * std::sin(d_theta0) - d_omega)
                 : 0.0;
    return est;
}

} // namespace kuramoto::particle
