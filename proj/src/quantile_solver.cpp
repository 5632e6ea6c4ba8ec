#include "kuramoto/quantile_solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kuramoto/errors.hpp"

namespace kuramoto::quantile {

namespace {

struct Lattice {
    std::vector<double> omega;  // Omega of each lattice entry
    std::vector<double> weight; // quadrature weight of each entry
};

Lattice flatten(const QuantileField& q) {
    Lattice lat;
    lat.omega.resize(q.lattice_size());
    lat.weight.resize(q.lattice_size());
    for (std::size_t k = 0; k < q.fibers(); ++k) {
        const double w = q.sample_weight(k);
        for (std::size_t j = 0; j < q.m_eta(); ++j) {
            lat.omega[k * q.m_eta() + j] = q.freq.nodes[k];
            lat.weight[k * q.m_eta() + j] = w;
        }
    }
    return lat;
}

void rhs_into(const std::vector<double>& phi, const Lattice& lat, double coupling,
              std::vector<double>& out) {
    const std::size_t n = phi.size();
    double s = 0.0;
    double c = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        s += lat.weight[a] * std::sin(phi[a]);
        c += lat.weight[a] * std::cos(phi[a]);
    }
    out.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
        out[a] = lat.omega[a] + coupling * (s * std::cos(phi[a]) - c * std::sin(phi[a]));
    }
}

} // namespace

double KineticParams::default_dt(double coupling) {
    return 1e-3 * std::min(1.0, 1.0 / std::max(coupling, 1e-12));
}

void KineticParams::validate(const QuantileField& q) const {
    if (!(coupling >= 0.0)) throw Error("KineticParams: coupling must be >= 0");
    if (!(dt > 0.0)) throw Error("KineticParams: dt must be positive");
    if (!(t_end >= 0.0)) throw Error("KineticParams: t_end must be >= 0");
    if (std::abs(q.total_weight() - 1.0) > 1e-10) {
        throw NonUnitMass("quantile field carries total weight " +
                          std::to_string(q.total_weight()));
    }
}

std::vector<double> phi_rhs(const QuantileField& q, double coupling) {
    const Lattice lat = flatten(q);
    std::vector<double> out;
    rhs_into(q.phi, lat, coupling, out);
    return out;
}

std::vector<double> phi_rhs_pairwise(const QuantileField& q, double coupling) {
    const Lattice lat = flatten(q);
    const std::size_t n = q.lattice_size();
    std::vector<double> out(n);
    for (std::size_t a = 0; a < n; ++a) {
        double acc = 0.0;
        for (std::size_t b = 0; b < n; ++b) {
            acc += lat.weight[b] * std::sin(q.phi[b] - q.phi[a]);
        }
        out[a] = lat.omega[a] + coupling * acc;
    }
    return out;
}

QuantileField step_rk4(const QuantileField& q, double coupling, double dt) {
    const Lattice lat = flatten(q);
    const std::size_t n = q.lattice_size();
    std::vector<double> k1, k2, k3, k4, tmp(n);

    rhs_into(q.phi, lat, coupling, k1);
    for (std::size_t a = 0; a < n; ++a) tmp[a] = q.phi[a] + 0.5 * dt * k1[a];
    rhs_into(tmp, lat, coupling, k2);
    for (std::size_t a = 0; a < n; ++a) tmp[a] = q.phi[a] + 0.5 * dt * k2[a];
    rhs_into(tmp, lat, coupling, k3);
    for (std::size_t a = 0; a < n; ++a) tmp[a] = q.phi[a] + dt * k3[a];
    rhs_into(tmp, lat, coupling, k4);

    QuantileField out = q;
    out.time = q.time + dt;
    for (std::size_t a = 0; a < n; ++a) {
        out.phi[a] = q.phi[a] + dt / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
    }
    return out;
}

FieldTrajectory evolve(const QuantileField& q0, const KineticParams& params,
                       std::size_t sample_every, bool keep_snapshots) {
    q0.validate();
    params.validate(q0);
    if (sample_every == 0) sample_every = 1;

    const auto n_steps = static_cast<std::size_t>(std::ceil(params.t_end / params.dt - 1e-9));
    const Lattice lat = flatten(q0);
    const std::size_t n = q0.lattice_size();

    FieldTrajectory rec;
    QuantileField q = q0;
    auto sample = [&](const QuantileField& f) {
        rec.times.push_back(f.time);
        rec.diameter.push_back(field_diameter(f));
        rec.theta_mean.push_back(f.theta_mean());
        if (keep_snapshots) rec.snapshots.push_back(f);
    };
    auto check_state = [&](const QuantileField& f) {
        for (std::size_t k = 0; k < f.fibers(); ++k) {
            for (std::size_t j = 0; j + 1 < f.m_eta(); ++j) {
                if (f.at(j + 1, k) < f.at(j, k)) {
                    throw MonotonicityLoss("quantiles crossed on fiber " + std::to_string(k) +
                                           " at t = " + std::to_string(f.time));
                }
            }
        }
        for (double v : f.phi) {
            if (!(v > 0.0 && v < kTwoPi)) {
                throw SupportEscape("phi left (0, 2*pi) at t = " + std::to_string(f.time));
            }
        }
    };

    sample(q);
    std::vector<double> k1, k2, k3, k4, tmp(n);
    const double dt = params.dt;
    for (std::size_t step = 0; step < n_steps; ++step) {
        rhs_into(q.phi, lat, params.coupling, k1);
        for (std::size_t a = 0; a < n; ++a) tmp[a] = q.phi[a] + 0.5 * dt * k1[a];
        rhs_into(tmp, lat, params.coupling, k2);
        for (std::size_t a = 0; a < n; ++a) tmp[a] = q.phi[a] + 0.5 * dt * k2[a];
        rhs_into(tmp, lat, params.coupling, k3);
        for (std::size_t a = 0; a < n; ++a) tmp[a] = q.phi[a] + dt * k3[a];
        rhs_into(tmp, lat, params.coupling, k4);
        for (std::size_t a = 0; a < n; ++a) {
            q.phi[a] += dt / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
        }
        q.time = q0.time + static_cast<double>(step + 1) * dt;
        check_state(q);
        if ((step + 1) % sample_every == 0 || step + 1 == n_steps) sample(q);
    }
    rec.final_state = std::move(q);
    return rec;
}

double field_diameter(const QuantileField& q) {
    double lo = phi_at_zero(q, 0);
    double hi = phi_at_extent(q, 0);
    for (std::size_t k = 1; k < q.fibers(); ++k) {
        lo = std::min(lo, phi_at_zero(q, k));
        hi = std::max(hi, phi_at_extent(q, k));
    }
    return hi - lo;
}

} // namespace kuramoto::quantile
