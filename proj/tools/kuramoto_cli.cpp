#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kuramoto/config.hpp"
#include "kuramoto/experiments.hpp"

namespace {

using kuramoto::harness::ExperimentConfig;
using kuramoto::harness::Report;

struct SubArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool out_set = false;
    std::vector<std::string> overrides;
};

int run(const std::string& experiment, const SubArgs& args) {
    ExperimentConfig cfg = args.config_path.empty()
                               ? ExperimentConfig::defaults_for(experiment)
                               : ExperimentConfig::from_file(args.config_path);
    cfg.experiment = experiment;
    if (args.seed_set) cfg.seed = args.seed;
    if (args.out_set) cfg.out_dir = args.out_dir;
    for (const auto& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "bad --set item (expected key=value): " << kv << "\n";
            return 2;
        }
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }

    const Report rep = kuramoto::harness::run_experiment(cfg);
    for (const auto& c : rep.checks) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.details << "\n";
    }
    std::cout << "verdict: " << (rep.pass() ? "pass" : "fail") << " (report in " << cfg.out_dir
              << ")\n";
    return rep.pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kuramoto particle / kinetic solvers and the synchronization "
                 "and contraction verification experiments"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> experiments = {
        {"sync", "sync_identical"},
        {"trapping", "trapping"},
        {"contraction", "contraction"},
        {"meanfield", "meanfield_convergence"},
        {"lemma54", "lemma54_audit"},
        {"crosscheck", "solver_crosscheck"},
    };

    std::vector<SubArgs> args(experiments.size());
    std::vector<CLI::App*> subs;
    for (std::size_t i = 0; i < experiments.size(); ++i) {
        CLI::App* sub = app.add_subcommand(experiments[i].first,
                                           "run the " + experiments[i].second + " experiment");
        sub->add_option("--config", args[i].config_path, "key = value config file");
        sub->add_option("--seed", args[i].seed, "64-bit seed")
            ->each([&args, i](const std::string&) { args[i].seed_set = true; });
        sub->add_option("--out", args[i].out_dir, "output directory")
            ->each([&args, i](const std::string&) { args[i].out_set = true; });
        sub->add_option("--set", args[i].overrides, "extra key=value overrides");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        for (std::size_t i = 0; i < experiments.size(); ++i) {
            if (subs[i]->parsed()) return run(experiments[i].second, args[i]);
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 2;
}
