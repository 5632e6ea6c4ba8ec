#include "kuramoto/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "kuramoto/errors.hpp"
#include "kuramoto/fv_solver.hpp"
#include "kuramoto/io.hpp"
#include "kuramoto/metrics.hpp"
#include "kuramoto/particle.hpp"
#include "kuramoto/presets.hpp"
#include "kuramoto/quantile_solver.hpp"
#include "kuramoto/rng.hpp"
#include "kuramoto/support.hpp"

namespace kuramoto::harness {

namespace {

using nlohmann::json;

std::string out_path(const ExperimentConfig& cfg, const std::string& name) {
    return cfg.out_dir + "/" + name;
}

json cfg_to_json(const ExperimentConfig& cfg) {
    return json{{"experiment", cfg.experiment}, {"K", cfg.coupling},
                {"g", cfg.g_spec},             {"init", cfg.init_spec},
                {"init2", cfg.init2_spec},     {"N", cfg.n_particles},
                {"M_theta", cfg.m_theta},      {"M_eta", cfg.m_eta},
                {"n_fields", cfg.n_fields},    {"dt", cfg.resolved_dt()},
                {"t_end", cfg.t_end},          {"sample_every", cfg.sample_every},
                {"D0", cfg.d0},                {"cluster_width", cfg.cluster_width},
                {"seed", cfg.seed},            {"out_dir", cfg.out_dir}};
}

void finish_report(const ExperimentConfig& cfg, Report& rep) {
    rep.details["params"] = cfg_to_json(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    std::ofstream out(out_path(cfg, "report.json"), std::ios::binary);
    if (!out) throw Error("cannot write report under " + cfg.out_dir);
    out << rep.to_json().dump(2) << "\n";
}

void add_check(Report& rep, const std::string& name, bool pass, const std::string& details) {
    rep.checks.push_back({name, pass, details});
}

double nominal_omega_diameter(const FrequencyDensity& g) {
    return g.atomic ? g.nodes.back() - g.nodes.front() : 2.0 * g.support_radius;
}

bool same_law(const FrequencyDensity& a, const FrequencyDensity& b) {
    if (a.fibers() != b.fibers() || a.atomic != b.atomic) return false;
    for (std::size_t k = 0; k < a.fibers(); ++k) {
        if (std::abs(a.nodes[k] - b.nodes[k]) > 1e-12 ||
            std::abs(a.values[k] - b.values[k]) > 1e-12 ||
            std::abs(a.domega[k] - b.domega[k]) > 1e-12) {
            return false;
        }
    }
    return true;
}

} // namespace

bool Report::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

json Report::to_json() const {
    json checks_json = json::array();
    for (const auto& c : checks) {
        checks_json.push_back({{"name", c.name}, {"pass", c.pass}, {"details", c.details}});
    }
    json j = details;
    j["experiment"] = experiment;
    j["verdict"] = pass() ? "pass" : "fail";
    j["checks"] = checks_json;
    return j;
}

Report run_sync_identical(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "sync_identical";

    const FrequencyDensity g = parse_frequency_spec(cfg.g_spec);
    const GridDensity f0 = make_initial_density(cfg.init_spec, g, cfg.m_theta);
    const FrequencyDensity& law = f0.freq;
    if (!law.atomic || law.fibers() != 1 || law.nodes[0] != 0.0) {
        throw PreconditionViolated("sync_identical needs identical oscillators (single Omega = 0)");
    }
    if (!(cfg.coupling > 0.0)) throw PreconditionViolated("sync_identical needs K > 0");
    if (!(support_box(f0).theta_diameter() < kPi)) {
        throw PreconditionViolated("initial phase diameter must stay below pi");
    }
    if (std::abs(f0.theta_mean() - kPi) > 1e-9) {
        throw PreconditionViolated("initial theta mean must equal pi");
    }

    // Particle run. A box profile is realized endpoint-inclusive so the
    // initial diameter is exact; everything else goes through the comb.
    PhaseEnsemble e0;
    if (cfg.init_spec.rfind("box:", 0) == 0) {
        const ThetaProfile prof = parse_theta_profile(cfg.init_spec);
        e0 = make_interval_ensemble(law, {{prof.support_lo(), prof.support_hi()}},
                                    cfg.n_particles);
    } else {
        e0 = dirac_comb_from_density(f0, cfg.n_particles);
    }
    particle::ParticleParams pp;
    pp.coupling = cfg.coupling;
    pp.dt = cfg.resolved_dt();
    pp.t_end = cfg.t_end;
    const auto ptraj = particle::simulate(e0, pp, cfg.sample_every, /*keep_snapshots=*/true);

    // Field run on the same clock.
    quantile::KineticParams kp;
    kp.coupling = cfg.coupling;
    kp.dt = pp.dt;
    kp.t_end = cfg.t_end;
    const QuantileField q0 = quantile_field_from_density(f0, cfg.m_eta);
    const auto ftraj = quantile::evolve(q0, kp, cfg.sample_every);

    const double d0p = ptraj.diameter.front();
    const double d0f = ftraj.diameter.front();
    const double alpha_p = std::sin(d0p) / d0p;
    const double alpha_f = std::sin(d0f) / d0f;
    const double eps = 1e-6;

    std::vector<double> env_hi(ptraj.times.size()), env_lo(ptraj.times.size());
    std::vector<double> env_field(ftraj.times.size()), bl_upper(ptraj.times.size());
    bool particle_env_ok = true;
    bool field_env_ok = true;
    bool bl_ok = true;
    for (std::size_t i = 0; i < ptraj.times.size(); ++i) {
        const double t = ptraj.times[i];
        env_hi[i] = d0p * std::exp(-cfg.coupling * alpha_p * t);
        env_lo[i] = d0p * std::exp(-cfg.coupling * t);
        bl_upper[i] =
            metrics::bl_distance_upper(ensemble_to_empirical(ptraj.snapshots[i]), kPi);
        particle_env_ok &= (ptraj.diameter[i] >= env_lo[i] - eps) &&
                           (ptraj.diameter[i] <= env_hi[i] + eps);
        bl_ok &= bl_upper[i] <= env_hi[i] + eps;
    }
    for (std::size_t i = 0; i < ftraj.times.size(); ++i) {
        env_field[i] = d0f * std::exp(-cfg.coupling * alpha_f * ftraj.times[i]);
        field_env_ok &= ftraj.diameter[i] <= env_field[i] + eps;
    }

    // Soft check: r should climb while the diameter shrinks; not asserted.
    std::size_t r_violations = 0;
    for (std::size_t i = 0; i + 1 < ptraj.order_param.size(); ++i) {
        if (ptraj.order_param[i + 1] < ptraj.order_param[i] - 1e-8) ++r_violations;
    }

    add_check(rep, "particle_envelope", particle_env_ok,
              "exp(-Kt) D0 - eps <= D(t) <= exp(-K sin(D0)/D0 t) D0 + eps");
    add_check(rep, "field_envelope", field_env_ok, "field diameter under its decay envelope");
    add_check(rep, "bl_upper_bound", bl_ok, "first-moment bound under the envelope");
    rep.details["r_monotonicity_violations"] = r_violations;
    rep.details["D0_particle"] = d0p;
    rep.details["D0_field"] = d0f;
    rep.details["final_bl_upper"] = bl_upper.back();

    std::filesystem::create_directories(cfg.out_dir);
    write_ensemble_csv(e0, out_path(cfg, "ensemble_initial.csv"));
    write_ensemble_csv(ptraj.final_state, out_path(cfg, "ensemble_final.csv"));
    write_series_csv(out_path(cfg, "sync_series.csv"),
                     {"t", "D_theta", "r", "theta_c", "bl_upper", "envelope_hi", "envelope_lo",
                      "D_field", "envelope_field"},
                     {ptraj.times, ptraj.diameter, ptraj.order_param, ptraj.mean_phase, bl_upper,
                      env_hi, env_lo, ftraj.diameter, env_field});
    finish_report(cfg, rep);
    return rep;
}

Report run_trapping(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "trapping";

    const FrequencyDensity g = parse_frequency_spec(cfg.g_spec);
    if (g.fibers() < 2) throw PreconditionViolated("trapping needs a spread frequency law");
    const double d0 = cfg.d0;
    const double w = cfg.cluster_width;
    if (!(d0 > 0.0 && d0 < kPi)) throw PreconditionViolated("trapping needs 0 < D0 < pi");
    if (!(w > 0.0 && w <= d0)) throw PreconditionViolated("cluster width must lie in (0, D0]");

    // Frequency-reversed cluster layout: the slowest fiber starts on top, so
    // the sweep into the trapping region happens early instead of riding the
    // slow tail of the comparison equation.
    std::vector<std::pair<double, double>> intervals(g.fibers());
    const double lo0 = kPi - 0.5 * d0;
    for (std::size_t k = 0; k < g.fibers(); ++k) {
        const double frac = g.fibers() == 1
                                ? 0.5
                                : static_cast<double>(g.fibers() - 1 - k) /
                                      static_cast<double>(g.fibers() - 1);
        const double lo = lo0 + frac * (d0 - w);
        intervals[k] = {lo, lo + w};
    }
    const PhaseEnsemble e0 = make_interval_ensemble(g, intervals, cfg.n_particles);

    const double d_omega = particle::freq_diameter(e0);
    const double d_theta0 = particle::phase_diameter(e0);
    if (!(cfg.coupling > d_omega / std::sin(d_theta0))) {
        throw PreconditionViolated("K must exceed D_Omega / sin(D_theta0)");
    }
    const auto est = particle::trapping_estimates(d_theta0, d_omega, cfg.coupling);

    particle::ParticleParams pp;
    pp.coupling = cfg.coupling;
    pp.dt = cfg.resolved_dt();
    pp.t_end = cfg.t_end;
    const auto traj = particle::simulate(e0, pp, cfg.sample_every);

    bool bounded = true;
    bool trapped = true;
    double entry_time = -1.0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        bounded &= traj.diameter[i] <= d_theta0 + 1e-9;
        const bool inside = traj.diameter[i] <= est.d_infty + 1e-3;
        if (inside && entry_time < 0.0) entry_time = traj.times[i];
        if (!inside && entry_time >= 0.0) entry_time = -2.0; // left again
        if (traj.times[i] >= est.t0) trapped &= inside;
    }

    add_check(rep, "diameter_bounded", bounded, "D_theta(t) <= D0 for all t");
    add_check(rep, "trapped_after_t0", trapped, "D_theta(t) <= D_infty + 1e-3 for t >= t0");
    rep.details["D_theta0"] = d_theta0;
    rep.details["D_omega"] = d_omega;
    rep.details["d_infty"] = est.d_infty;
    rep.details["t0"] = est.t0;
    rep.details["entry_time"] = entry_time;

    std::filesystem::create_directories(cfg.out_dir);
    write_ensemble_csv(e0, out_path(cfg, "ensemble_initial.csv"));
    write_ensemble_csv(traj.final_state, out_path(cfg, "ensemble_final.csv"));
    write_series_csv(out_path(cfg, "trapping_series.csv"), {"t", "D_theta", "r", "theta_c"},
                     {traj.times, traj.diameter, traj.order_param, traj.mean_phase});
    finish_report(cfg, rep);
    return rep;
}

Report run_contraction(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "contraction";

    const FrequencyDensity g = parse_frequency_spec(cfg.g_spec);
    const GridDensity f1 = make_initial_density(cfg.init_spec, g, cfg.m_theta);
    const GridDensity f2 = make_initial_density(cfg.init2_spec, g, cfg.m_theta);
    if (!same_law(f1.freq, f2.freq)) {
        throw PreconditionViolated("the two initial data must share the frequency law");
    }
    QuantileField q1 = quantile_field_from_density(f1, cfg.m_eta);
    QuantileField q2 = quantile_field_from_density(f2, cfg.m_eta);

    // Equal theta means are required; unequal means are translated away and
    // the shift is logged.
    const double shift = q1.theta_mean() - q2.theta_mean();
    for (double& v : q2.phi) v += shift;
    if (!q2.in_range()) throw SupportEscape("mean translation pushed support out of (0, 2*pi)");

    const double d1 = quantile::field_diameter(q1);
    const double d2 = quantile::field_diameter(q2);
    const double d_omega = nominal_omega_diameter(f1.freq);
    if (!(d1 > 0.0 && d1 < kPi && d2 > 0.0 && d2 < kPi)) {
        throw PreconditionViolated("both initial diameters must lie in (0, pi)");
    }
    if (!(cfg.coupling >
          d_omega * std::max(1.0 / std::sin(d1), 1.0 / std::sin(d2)))) {
        throw PreconditionViolated("K must exceed D_Omega max{1/sin D1, 1/sin D2}");
    }
    const auto est = particle::trapping_estimates(std::max(d1, d2), d_omega, cfg.coupling);
    const double bound_rate = 2.0 * cfg.coupling * std::cos(est.d_infty) / kPi;
    if (!(cfg.t_end > est.t0)) throw PreconditionViolated("t_end does not reach t0");

    quantile::KineticParams kp;
    kp.coupling = cfg.coupling;
    kp.dt = cfg.resolved_dt();
    kp.t_end = cfg.t_end;
    const auto traj1 = quantile::evolve(q1, kp, cfg.sample_every, /*keep_snapshots=*/true);
    const auto traj2 = quantile::evolve(q2, kp, cfg.sample_every, /*keep_snapshots=*/true);

    const std::vector<double> ps = {1.0, 2.0, metrics::kPInfinity};
    const std::vector<std::string> p_names = {"W1", "W2", "Winf"};
    const std::size_t n_samples = traj1.times.size();
    std::vector<std::vector<double>> dist(ps.size(), std::vector<double>(n_samples, 0.0));
    for (std::size_t i = 0; i < n_samples; ++i) {
        for (std::size_t ip = 0; ip < ps.size(); ++ip) {
            dist[ip][i] = metrics::modified_wp(traj1.snapshots[i], traj2.snapshots[i], ps[ip]);
        }
    }

    std::size_t idx0 = n_samples;
    for (std::size_t i = 0; i < n_samples; ++i) {
        if (traj1.times[i] >= est.t0) {
            idx0 = i;
            break;
        }
    }
    if (idx0 == n_samples) throw PreconditionViolated("no sample at or after t0");
    const double t_ref = traj1.times[idx0];

    std::vector<std::vector<double>> bound(ps.size(), std::vector<double>(n_samples, 0.0));
    json rates = json::object();
    std::vector<double> csv_p, csv_rate, csv_r2;
    for (std::size_t ip = 0; ip < ps.size(); ++ip) {
        const double ref = dist[ip][idx0];
        if (ref <= 1e-300) {
            // Identical initial data: the distance is identically zero and
            // there is no decay rate to fit.
            add_check(rep, "contraction_bound_" + p_names[ip], true,
                      "reference distance is zero (identical initial data)");
            continue;
        }
        bool ok = true;
        for (std::size_t i = 0; i < n_samples; ++i) {
            const double t = traj1.times[i];
            bound[ip][i] = ref * std::exp(-bound_rate * (t - t_ref));
            if (i > idx0 && t <= t_ref + 5.0) {
                ok &= dist[ip][i] <= bound[ip][i] * (1.0 + 1e-3);
            }
        }
        add_check(rep, "contraction_bound_" + p_names[ip], ok,
                  "W~_p(t) within exp(-2K cos(D_infty)/pi (t - t0)) of the reference");

        const auto fit = metrics::fit_decay_rate(traj1.times, dist[ip], t_ref,
                                                 std::min(cfg.t_end, t_ref + 5.0));
        rates[p_names[ip]] = {{"rate", fit.rate}, {"r_squared", fit.r_squared}};
        csv_p.push_back(ps[ip]);
        csv_rate.push_back(fit.rate);
        csv_r2.push_back(fit.r_squared);
        if (ps[ip] == 2.0) {
            add_check(rep, "fitted_rate_above_bound", fit.rate >= bound_rate * 0.95,
                      "measured decay at least 95% of the guaranteed rate");
        }
    }

    rep.details["mean_shift_applied"] = shift;
    rep.details["D_theta_mu0"] = d1;
    rep.details["D_theta_nu0"] = d2;
    rep.details["D_omega"] = d_omega;
    rep.details["t0"] = est.t0;
    rep.details["t_reference"] = t_ref;
    rep.details["d_infty"] = est.d_infty;
    rep.details["bound_rate"] = bound_rate;
    rep.details["fitted_rates"] = rates;

    std::filesystem::create_directories(cfg.out_dir);
    write_series_csv(out_path(cfg, "contraction_rates.csv"), {"p", "rate", "r_squared"},
                     {csv_p, csv_rate, csv_r2});
    write_series_csv(out_path(cfg, "contraction_series.csv"),
                     {"t", "W1", "W2", "Winf", "bound_W1", "bound_W2", "bound_Winf", "D_mu",
                      "D_nu"},
                     {traj1.times, dist[0], dist[1], dist[2], bound[0], bound[1], bound[2],
                      traj1.diameter, traj2.diameter});
    finish_report(cfg, rep);
    return rep;
}

Report run_meanfield_convergence(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "meanfield_convergence";

    const FrequencyDensity g = parse_frequency_spec(cfg.g_spec);
    const GridDensity f0 = make_initial_density(cfg.init_spec, g, cfg.m_theta);

    const std::vector<std::size_t> ladder = {32, 64, 128, 256, 512};
    particle::ParticleParams pp;
    pp.coupling = cfg.coupling;
    pp.dt = cfg.resolved_dt();
    pp.t_end = cfg.t_end;

    std::map<std::size_t, PhaseEnsemble> finals;
    for (std::size_t n : ladder) {
        const PhaseEnsemble comb = dirac_comb_from_density(f0, n);
        finals[n] = particle::simulate(comb, pp, cfg.sample_every).final_state;
    }

    std::vector<double> rung_n, rung_w1;
    bool decreasing = true;
    for (std::size_t i = 0; i + 1 < ladder.size(); ++i) {
        const auto a = refine_empirical(ensemble_to_empirical(finals[ladder[i]]), 2);
        const auto b = ensemble_to_empirical(finals[ladder[i + 1]]);
        const double d = metrics::w1_empirical(a, b);
        rung_n.push_back(static_cast<double>(ladder[i]));
        rung_w1.push_back(d);
        if (i > 0) decreasing &= rung_w1[i] < rung_w1[i - 1];
    }

    quantile::KineticParams kp;
    kp.coupling = cfg.coupling;
    kp.dt = pp.dt;
    kp.t_end = cfg.t_end;
    const QuantileField qc0 = quantile_field_from_density(f0, cfg.m_eta);
    const QuantileField q_cont = quantile::evolve(qc0, kp, cfg.sample_every).final_state;
    const QuantileField q_comb = quantile_field_from_empirical(
        ensemble_to_empirical(finals[ladder.back()]), f0.freq, cfg.m_eta);
    const double w1_cont = metrics::modified_wp(q_comb, q_cont, 1.0);

    add_check(rep, "self_convergence_monotone", decreasing,
              "W1 between N and 2N combs strictly decreases along the ladder");
    add_check(rep, "continuum_within_factor_two", w1_cont <= 2.0 * rung_w1.back(),
              "largest comb within twice the last rung of the continuum solution");
    rep.details["w1_comb_vs_continuum"] = w1_cont;
    rep.details["last_rung"] = rung_w1.back();

    std::filesystem::create_directories(cfg.out_dir);
    write_series_csv(out_path(cfg, "meanfield_ladder.csv"), {"N", "w1_pair"},
                     {rung_n, rung_w1});
    finish_report(cfg, rep);
    return rep;
}

Report run_lemma54_audit(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "lemma54_audit";

    const FrequencyDensity g = parse_frequency_spec(cfg.g_spec);
    const std::size_t m_eta = cfg.m_eta;
    const std::size_t fibers = g.fibers();

    std::vector<double> weights;
    weights.reserve(m_eta * fibers);
    for (std::size_t k = 0; k < fibers; ++k) {
        const double w = g.fiber_mass(k) / static_cast<double>(m_eta);
        for (std::size_t j = 0; j < m_eta; ++j) weights.push_back(w);
    }
    const std::vector<double> fractions = uniform_fractions(m_eta);

    SplitMix64 root(cfg.seed);
    const std::vector<double> ps = {1.0, 2.0, 3.0, 5.0};
    std::size_t violations = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    std::map<std::string, std::size_t> patterns;
    std::vector<double> csv_field, csv_p, csv_lhs, csv_rhs;

    for (std::size_t fi = 0; fi < cfg.n_fields; ++fi) {
        SplitMix64 rng = root.split();
        metrics::LatticeFunction field;
        field.weights = weights;
        field.values.assign(weights.size(), 0.0);

        if (fi % 2 == 0) {
            // Smooth trigonometric field, projected to zero mean.
            double coef[3][3], ph1[3][3], ph2[3][3];
            for (int u = 0; u < 3; ++u) {
                for (int v = 0; v < 3; ++v) {
                    coef[u][v] = rng.next_in(-1.0, 1.0);
                    ph1[u][v] = rng.next_in(0.0, kTwoPi);
                    ph2[u][v] = rng.next_in(0.0, kTwoPi);
                }
            }
            for (std::size_t k = 0; k < fibers; ++k) {
                const double y = g.nodes[k] / g.support_radius;
                for (std::size_t j = 0; j < m_eta; ++j) {
                    double v = 0.0;
                    for (int u = 0; u < 3; ++u) {
                        for (int vv = 0; vv < 3; ++vv) {
                            v += coef[u][vv] *
                                 std::cos(kTwoPi * (u + 1) * fractions[j] + ph1[u][vv]) *
                                 std::cos(kPi * vv * y + ph2[u][vv]);
                        }
                    }
                    field.values[k * m_eta + j] = v;
                }
            }
            metrics::project_mean_zero(field);
            metrics::rescale_to_max(field, rng.next_in(0.2, 1.45));
        } else {
            // Blocky +-c field with exact zero mean through mirrored fibers;
            // keeps the zero set populated.
            const double c = rng.next_in(0.2, 1.4);
            for (std::size_t k = 0; k < fibers / 2; ++k) {
                const std::size_t mk = fibers - 1 - k;
                for (std::size_t j = 0; j < m_eta; ++j) {
                    const double u = rng.next_double();
                    if (u < 0.35) {
                        field.values[k * m_eta + j] = c;
                        field.values[mk * m_eta + j] = -c;
                    } else if (u < 0.7) {
                        field.values[k * m_eta + j] = -c;
                        field.values[mk * m_eta + j] = c;
                    }
                }
            }
        }

        std::size_t np = 0, nz = 0, nn = 0;
        for (double v : field.values) {
            if (v > 0.0) ++np;
            else if (v < 0.0) ++nn;
            else ++nz;
        }
        std::string pattern;
        if (np > 0) pattern += 'P';
        if (nz > 0) pattern += 'Z';
        if (nn > 0) pattern += 'N';
        ++patterns[pattern];

        for (double p : ps) {
            const auto res = metrics::lemma_cal_check(field, p);
            if (!res.holds) ++violations;
            min_margin = std::min(min_margin, res.rhs - res.lhs);
            csv_field.push_back(static_cast<double>(fi));
            csv_p.push_back(p);
            csv_lhs.push_back(res.lhs);
            csv_rhs.push_back(res.rhs);
        }
    }

    add_check(rep, "no_violations", violations == 0,
              std::to_string(violations) + " violations over " + std::to_string(cfg.n_fields) +
                  " fields x 4 exponents");
    json pat = json::object();
    for (const auto& [k, v] : patterns) pat[k] = v;
    rep.details["patterns"] = pat;
    rep.details["min_margin"] = min_margin;
    rep.details["p_values"] = ps;

    std::filesystem::create_directories(cfg.out_dir);
    write_series_csv(out_path(cfg, "lemma54_audit.csv"), {"field", "p", "lhs", "rhs"},
                     {csv_field, csv_p, csv_lhs, csv_rhs});
    finish_report(cfg, rep);
    return rep;
}

Report run_solver_crosscheck(const ExperimentConfig& cfg) {
    Report rep;
    rep.experiment = "solver_crosscheck";

    const FrequencyDensity g = parse_frequency_spec(cfg.g_spec);
    if (cfg.init_spec.rfind("file:", 0) == 0) {
        throw PreconditionViolated(
            "solver_crosscheck rebuilds the initial data at two resolutions "
            "and needs an analytic profile");
    }
    const ThetaProfile prof = parse_theta_profile(cfg.init_spec);

    auto distance_at = [&](std::size_t m_theta, std::size_t m_eta) {
        const GridDensity f0 = make_product_density(g, m_theta,
                                                    [&](double th) { return prof.eval(th); });
        fv::FvParams fp;
        fp.coupling = cfg.coupling;
        fp.t_end = cfg.t_end;
        const GridDensity f_end = fv::fv_simulate(f0, fp, 1 << 20).final_state;

        quantile::KineticParams kp;
        kp.coupling = cfg.coupling;
        kp.dt = cfg.resolved_dt();
        kp.t_end = cfg.t_end;
        const QuantileField q0 = quantile_field_from_density(f0, m_eta);
        const QuantileField q_end = quantile::evolve(q0, kp, 1 << 20).final_state;

        const QuantileField q_fv = quantile_field_from_density(f_end, m_eta);
        return metrics::modified_wp(q_fv, q_end, 1.0);
    };

    const double base = distance_at(cfg.m_theta, cfg.m_eta);
    const double fine = distance_at(2 * cfg.m_theta, 2 * cfg.m_eta);

    add_check(rep, "crosscheck_tolerance", base <= 5e-2,
              "W~_1(fv, quantile) at reference resolution within 5e-2");
    add_check(rep, "crosscheck_refinement", fine < base,
              "distance strictly decreases when both resolutions double");
    rep.details["w1_base"] = base;
    rep.details["w1_refined"] = fine;

    std::filesystem::create_directories(cfg.out_dir);
    write_series_csv(out_path(cfg, "crosscheck.csv"), {"M_theta", "M_eta", "w1"},
                     {{static_cast<double>(cfg.m_theta), static_cast<double>(2 * cfg.m_theta)},
                      {static_cast<double>(cfg.m_eta), static_cast<double>(2 * cfg.m_eta)},
                      {base, fine}});
    finish_report(cfg, rep);
    return rep;
}

Report run_experiment(const ExperimentConfig& cfg) {
    if (cfg.experiment == "sync_identical") return run_sync_identical(cfg);
    if (cfg.experiment == "trapping") return run_trapping(cfg);
    if (cfg.experiment == "contraction") return run_contraction(cfg);
    if (cfg.experiment == "meanfield_convergence") return run_meanfield_convergence(cfg);
    if (cfg.experiment == "lemma54_audit") return run_lemma54_audit(cfg);
    if (cfg.experiment == "solver_crosscheck") return run_solver_crosscheck(cfg);
    throw Error("unknown experiment '" + cfg.experiment + "'");
}

} // namespace kuramoto::harness
