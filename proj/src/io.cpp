#include "kuramoto/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kuramoto/errors.hpp"

namespace kuramoto {

namespace {

using nlohmann::json;

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json freq_to_json(const FrequencyDensity& f) {
    return json{{"omega_nodes", f.nodes},
                {"values", f.values},
                {"domega", f.domega},
                {"support_radius", f.support_radius},
                {"value_at_zero", std::isnan(f.value_at_zero) ? json() : json(f.value_at_zero)},
                {"atomic", f.atomic}};
}

FrequencyDensity freq_from_json(const json& j) {
    FrequencyDensity f;
    f.nodes = j.at("omega_nodes").get<std::vector<double>>();
    f.values = j.at("values").get<std::vector<double>>();
    f.domega = j.at("domega").get<std::vector<double>>();
    f.support_radius = j.at("support_radius").get<double>();
    f.value_at_zero = j.at("value_at_zero").is_null()
                          ? std::numeric_limits<double>::quiet_NaN()
                          : j.at("value_at_zero").get<double>();
    f.atomic = j.at("atomic").get<bool>();
    return f;
}

std::vector<std::vector<double>> parse_csv_columns(const std::string& text,
                                                   std::size_t n_columns) {
    std::vector<std::vector<double>> cols(n_columns);
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("empty CSV");
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        for (std::size_t c = 0; c < n_columns; ++c) {
            if (!std::getline(row, cell, ',')) throw Error("short CSV row: " + line);
            cols[c].push_back(std::stod(cell));
        }
    }
    return cols;
}

} // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string sidecar_path(const std::string& csv_path) {
    const auto dot = csv_path.find_last_of('.');
    const std::string stem = (dot == std::string::npos) ? csv_path : csv_path.substr(0, dot);
    return stem + ".meta.json";
}

void write_series_csv(const std::string& path, const std::vector<std::string>& names,
                      const std::vector<std::vector<double>>& columns) {
    if (names.size() != columns.size()) throw Error("write_series_csv: name/column mismatch");
    std::ostringstream out;
    for (std::size_t c = 0; c < names.size(); ++c) {
        out << (c ? "," : "") << names[c];
    }
    out << "\n";
    const std::size_t rows = columns.empty() ? 0 : columns[0].size();
    for (const auto& col : columns) {
        if (col.size() != rows) throw Error("write_series_csv: ragged columns");
    }
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            out << (c ? "," : "") << format_double(columns[c][r]);
        }
        out << "\n";
    }
    write_text(path, out.str());
}

void write_grid_density_csv(const GridDensity& f, const std::string& path) {
    std::ostringstream out;
    out << "theta,omega,f\n";
    for (std::size_t k = 0; k < f.freq.fibers(); ++k) {
        for (std::size_t m = 0; m < f.m_theta; ++m) {
            out << format_double(f.theta_center(m)) << ',' << format_double(f.freq.nodes[k])
                << ',' << format_double(f.at(m, k)) << "\n";
        }
    }
    write_text(path, out.str());
    json meta{{"type", "grid_density"},
              {"m_theta", f.m_theta},
              {"m_omega", f.freq.fibers()},
              {"time", f.time},
              {"freq", freq_to_json(f.freq)}};
    write_text(sidecar_path(path), meta.dump(2) + "\n");
}

GridDensity read_grid_density_csv(const std::string& path) {
    const json meta = json::parse(read_text(sidecar_path(path)));
    if (meta.at("type") != "grid_density") throw Error("sidecar is not a grid_density");
    GridDensity f;
    f.freq = freq_from_json(meta.at("freq"));
    f.m_theta = meta.at("m_theta").get<std::size_t>();
    f.time = meta.at("time").get<double>();
    const auto cols = parse_csv_columns(read_text(path), 3);
    if (cols[2].size() != f.m_theta * f.freq.fibers()) throw Error("grid CSV size mismatch");
    f.values = cols[2];
    return f;
}

void write_ensemble_csv(const PhaseEnsemble& e, const std::string& path, bool wrap_theta) {
    std::ostringstream out;
    out << "theta,omega\n";
    for (std::size_t i = 0; i < e.size(); ++i) {
        double th = e.theta[i];
        if (wrap_theta) {
            th = std::fmod(th, kTwoPi);
            if (th < 0.0) th += kTwoPi;
        }
        out << format_double(th) << ',' << format_double(e.omega[i]) << "\n";
    }
    write_text(path, out.str());
    json meta{{"type", "phase_ensemble"}, {"n", e.size()}, {"time", e.time},
              {"theta_wrapped", wrap_theta}};
    write_text(sidecar_path(path), meta.dump(2) + "\n");
}

PhaseEnsemble read_ensemble_csv(const std::string& path) {
    const json meta = json::parse(read_text(sidecar_path(path)));
    if (meta.at("type") != "phase_ensemble") throw Error("sidecar is not a phase_ensemble");
    PhaseEnsemble e;
    e.time = meta.at("time").get<double>();
    const auto cols = parse_csv_columns(read_text(path), 2);
    e.theta = cols[0];
    e.omega = cols[1];
    return e;
}

void write_quantile_field_csv(const QuantileField& q, const std::string& path) {
    std::ostringstream out;
    out << "eta_fraction,omega,phi\n";
    for (std::size_t k = 0; k < q.fibers(); ++k) {
        for (std::size_t j = 0; j < q.m_eta(); ++j) {
            out << format_double(q.eta_fractions[j]) << ',' << format_double(q.freq.nodes[k])
                << ',' << format_double(q.at(j, k)) << "\n";
        }
    }
    write_text(path, out.str());
    json meta{{"type", "quantile_field"},
              {"m_eta", q.m_eta()},
              {"m_omega", q.fibers()},
              {"time", q.time},
              {"freq", freq_to_json(q.freq)}};
    write_text(sidecar_path(path), meta.dump(2) + "\n");
}

QuantileField read_quantile_field_csv(const std::string& path) {
    const json meta = json::parse(read_text(sidecar_path(path)));
    if (meta.at("type") != "quantile_field") throw Error("sidecar is not a quantile_field");
    QuantileField q;
    q.freq = freq_from_json(meta.at("freq"));
    q.time = meta.at("time").get<double>();
    const auto m_eta = meta.at("m_eta").get<std::size_t>();
    const auto cols = parse_csv_columns(read_text(path), 3);
    if (cols[2].size() != m_eta * q.freq.fibers()) throw Error("quantile CSV size mismatch");
    q.eta_fractions.assign(cols[0].begin(), cols[0].begin() + static_cast<std::ptrdiff_t>(m_eta));
    q.phi = cols[2];
    return q;
}

} // namespace kuramoto
