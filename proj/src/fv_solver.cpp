#include "kuramoto/fv_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto::fv {

TrigMoments trig_moments(const GridDensity& f) {
    TrigMoments m;
    const double dth = f.dtheta();
    for (std::size_t m_idx = 0; m_idx < f.m_theta; ++m_idx) {
        double rho = 0.0;
        for (std::size_t k = 0; k < f.freq.fibers(); ++k) {
            rho += f.at(m_idx, k) * f.freq.domega[k];
        }
        const double th = f.theta_center(m_idx);
        m.s += std::sin(th) * rho * dth;
        m.c += std::cos(th) * rho * dth;
    }
    return m;
}

double velocity_at(double theta, double omega_k, double coupling, const TrigMoments& m) {
    return omega_k - coupling * (m.c * std::sin(theta) - m.s * std::cos(theta));
}

std::vector<double> velocity_field(const GridDensity& f, double coupling) {
    const TrigMoments m = trig_moments(f);
    std::vector<double> w(f.values.size());
    for (std::size_t k = 0; k < f.freq.fibers(); ++k) {
        for (std::size_t m_idx = 0; m_idx < f.m_theta; ++m_idx) {
            w[k * f.m_theta + m_idx] =
                velocity_at(f.theta_center(m_idx), f.freq.nodes[k], coupling, m);
        }
    }
    return w;
}

double max_speed_bound(const GridDensity& f, double coupling) {
    double omega_max = 0.0;
    for (double o : f.freq.nodes) omega_max = std::max(omega_max, std::abs(o));
    // |convolution with sin| is at most the marginal mass, which is one.
    return omega_max + coupling;
}

GridDensity fv_step(const GridDensity& f, double coupling, double dt) {
    const TrigMoments m = trig_moments(f);
    const double dth = f.dtheta();
    const std::size_t mt = f.m_theta;

    GridDensity out = f;
    out.time = f.time + dt;
    std::vector<double> flux(mt + 1, 0.0); // zero-flux domain edges

    for (std::size_t k = 0; k < f.freq.fibers(); ++k) {
        const double omega_k = f.freq.nodes[k];
        for (std::size_t e = 1; e < mt; ++e) {
            const double v = velocity_at(f.theta_edge(e), omega_k, coupling, m);
            if (std::abs(v) * dt > 0.9 * dth * (1.0 + 1e-12)) {
                throw CflViolation("dt*|omega|/dtheta > 0.9 at theta edge " + std::to_string(e));
            }
            flux[e] = (v > 0.0) ? v * f.at(e - 1, k) : v * f.at(e, k);
        }
        for (std::size_t c = 0; c < mt; ++c) {
            out.at(c, k) = f.at(c, k) - dt / dth * (flux[c + 1] - flux[c]);
        }
    }
    return out;
}

FvTrajectory fv_simulate(const GridDensity& f0, const FvParams& params,
                         std::size_t sample_every, bool keep_snapshots) {
    f0.validate();
    if (!(params.cfl > 0.0 && params.cfl <= 0.9)) throw Error("fv: cfl must lie in (0, 0.9]");
    if (sample_every == 0) sample_every = 1;

    const double dt_max = params.cfl * f0.dtheta() / max_speed_bound(f0, params.coupling);
    const auto n_steps =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(params.t_end / dt_max)));
    const double dt = params.t_end / static_cast<double>(n_steps);

    FvTrajectory rec;
    auto sample = [&](const GridDensity& f) {
        rec.times.push_back(f.time);
        rec.mass.push_back(f.total_mass());
        rec.theta_mean.push_back(f.theta_mean());
        if (keep_snapshots) rec.snapshots.push_back(f);
    };

    GridDensity f = f0;
    sample(f);
    for (std::size_t step = 0; step < n_steps; ++step) {
        f = fv_step(f, params.coupling, dt);
        f.time = f0.time + static_cast<double>(step + 1) * dt;
        if ((step + 1) % sample_every == 0 || step + 1 == n_steps) sample(f);
    }
    rec.final_state = std::move(f);
    return rec;
}

} // namespace kuramoto::fv
