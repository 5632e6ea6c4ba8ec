#include "kuramoto/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <vector>

#include "kuramoto/errors.hpp"
#include "kuramoto/particle.hpp"

namespace kuramoto::harness {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

ExperimentConfig ExperimentConfig::defaults_for(const std::string& experiment) {
    ExperimentConfig c;
    c.experiment = experiment;
    if (experiment == "sync_identical") {
        c.coupling = 1.0;
        c.g_spec = "delta";
        c.init_spec = "box:c=pi,a=1.0";
        c.n_particles = 200;
        c.m_theta = 512;
        c.m_eta = 256;
        c.t_end = 10.0;
        c.sample_every = 10;
    } else if (experiment == "trapping") {
        c.coupling = 2.0;
        c.g_spec = "pair:o=0.5";
        c.n_particles = 200;
        c.d0 = 2.0;
        c.cluster_width = 0.5;
        c.t_end = 10.0;
        c.sample_every = 20;
    } else if (experiment == "contraction") {
        c.coupling = 2.0;
        c.g_spec = "uniform:C=0.5,M=32";
        c.init_spec = "bump:c=pi,a=0.9";
        c.init2_spec = "twobump:c1=pi-0.45,a1=0.45,c2=pi+0.45,a2=0.45,w=0.5";
        c.m_theta = 512;
        c.m_eta = 128;
        c.t_end = 7.0;
        c.sample_every = 20;
    } else if (experiment == "meanfield_convergence") {
        c.coupling = 1.0;
        c.g_spec = "uniform:C=0.5,M=16";
        c.init_spec = "bump:c=pi,a=1.2";
        c.m_theta = 512;
        c.m_eta = 256;
        c.t_end = 1.0;
        c.sample_every = 100;
    } else if (experiment == "lemma54_audit") {
        c.g_spec = "uniform:C=0.5,M=8";
        c.m_eta = 16;
        c.n_fields = 1000;
    } else if (experiment == "solver_crosscheck") {
        c.coupling = 1.0;
        c.g_spec = "uniform:C=0.5,M=16";
        c.init_spec = "twobump:c1=pi-0.55,a1=0.75,c2=pi+0.55,a2=0.75,w=0.5";
        c.m_theta = 512;
        c.m_eta = 256;
        c.t_end = 1.0;
        c.sample_every = 100;
    } else {
        throw Error("unknown experiment '" + experiment + "'");
    }
    return c;
}

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    if (key == "experiment") experiment = value;
    else if (key == "K") coupling = std::stod(value);
    else if (key == "g") g_spec = value;
    else if (key == "init") init_spec = value;
    else if (key == "init2") init2_spec = value;
    else if (key == "N") n_particles = std::stoul(value);
    else if (key == "M_theta") m_theta = std::stoul(value);
    else if (key == "M_eta") m_eta = std::stoul(value);
    else if (key == "n_fields") n_fields = std::stoul(value);
    else if (key == "dt") dt = std::stod(value);
    else if (key == "t_end") t_end = std::stod(value);
    else if (key == "sample_every") sample_every = std::stoul(value);
    else if (key == "D0") d0 = std::stod(value);
    else if (key == "cluster_width") cluster_width = std::stod(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "out_dir") out_dir = value;
    else throw Error("unknown config key '" + key + "'");
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config: " + path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string experiment;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error("bad config line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "experiment") experiment = value;
        pairs.emplace_back(key, value);
    }
    if (experiment.empty()) throw Error("config is missing the 'experiment' key");
    ExperimentConfig cfg = defaults_for(experiment);
    for (const auto& [k, v] : pairs) cfg.set(k, v);
    return cfg;
}

double ExperimentConfig::resolved_dt() const {
    return dt > 0.0 ? dt : particle::ParticleParams::default_dt(coupling);
}

} // namespace kuramoto::harness
