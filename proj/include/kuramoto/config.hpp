#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace kuramoto::harness {

/// Flat key = value experiment configuration. Every experiment starts from
/// its named defaults; a config file and CLI flags override individual keys.
struct ExperimentConfig {
    std::string experiment;

    double coupling = 1.0;      // K
    std::string g_spec;         // frequency law
    std::string init_spec;      // theta profile of the (first) initial datum
    std::string init2_spec;     // second initial datum (contraction)

    std::size_t n_particles = 200; // N
    std::size_t m_theta = 512;     // M_theta
    std::size_t m_eta = 128;       // M_eta
    std::size_t n_fields = 1000;   // lemma54 sample count

    double dt = 0.0;    // 0 selects the default policy 1e-3 * min(1, 1/K)
    double t_end = 10.0;
    std::size_t sample_every = 10;

    double d0 = 2.0;           // initial phase diameter (sync / trapping)
    double cluster_width = 0.5; // trapping per-fiber cluster width

    std::uint64_t seed = 42;
    std::string out_dir = "out";

    static ExperimentConfig defaults_for(const std::string& experiment);
    static ExperimentConfig from_file(const std::string& path);

    /// Applies one key = value override; throws on unknown keys.
    void set(const std::string& key, const std::string& value);

    /// dt resolved against the default policy for coupling K.
    double resolved_dt() const;
};

} // namespace kuramoto::harness
