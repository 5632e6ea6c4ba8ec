#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kuramoto/config.hpp"

namespace kuramoto::harness {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string details;
};

struct Report {
    std::string experiment;
    std::vector<CheckResult> checks;
    nlohmann::json details; // parameters and measured quantities

    bool pass() const;
    nlohmann::json to_json() const;
};

// Each experiment validates its hypotheses up front (PreconditionViolated on
// failure), runs the solvers, writes plot-ready CSV series plus report.json
// under cfg.out_dir, and returns the verdict.

Report run_sync_identical(const ExperimentConfig& cfg);
Report run_trapping(const ExperimentConfig& cfg);
Report run_contraction(const ExperimentConfig& cfg);
Report run_meanfield_convergence(const ExperimentConfig& cfg);
Report run_lemma54_audit(const ExperimentConfig& cfg);
Report run_solver_crosscheck(const ExperimentConfig& cfg);

/// Dispatch by cfg.experiment.
Report run_experiment(const ExperimentConfig& cfg);

} // namespace kuramoto::harness
