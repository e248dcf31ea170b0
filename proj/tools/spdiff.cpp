// spdiff: command-line front end.
//
// Exit codes: 0 all checks held, 1 refutation or violation, 2 usage, input or
// capacity error.

#include <iostream>

#include <CLI11.hpp>

#include "spdiff/error.hpp"
#include "spdiff/experiment.hpp"

namespace {

constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

}  // namespace

int main(int argc, char** argv) {
    spdiff::ExperimentConfig cfg;
    std::string out_dir;
    bool as_json = false;

    CLI::App app{"Opinion diffusion with single-peaked rankings"};
    app.set_config("--config", "", "Flat key = value config file; command-line flags win");
    app.require_subcommand(1, 1);

    app.add_option("--rule", cfg.rule, "kemeny | kemeny-sp | mmc | borda | copeland | dodgson | weak-dodgson | stv");
    app.add_option("--property", cfg.property, "CWC | CLC | SPP | EMC");
    app.add_option("--m", cfg.m, "Number of candidates");
    app.add_option("--n", cfg.n, "Number of voters");
    app.add_flag("--exact", cfg.exact, "Search exactly m and n instead of all sizes up to them");
    app.add_flag("--paper-witnesses,--fixed-witnesses", cfg.fixed_witnesses, "Also test the fixed counterexample profiles");
    app.add_option("--graph", cfg.graph, "path | cycle | star | complete | gnp");
    app.add_option("--p", cfg.p, "Edge probability for gnp");
    app.add_option("--seed", cfg.seed, "64-bit seed for generators and the random scheduler");
    app.add_option("--scheduler", cfg.scheduler, "round-robin | random | explicit");
    app.add_option("--sequence", cfg.sequence, "Voter ids for the explicit scheduler")->delimiter(',');
    app.add_option("--max-steps", cfg.max_steps, "Activation cap");
    app.add_option("--target", cfg.target, "up | down");
    app.add_option("--order", cfg.order, "ascending | descending");
    app.add_flag("--oracle", cfg.oracle, "Compare with the exhaustive reachability oracle");
    app.add_option("--oracle-states", cfg.oracle_states, "State cap of the oracle");
    app.add_option("--kind", cfg.kind, "profile | network (generate)");
    app.add_option("--net", cfg.net_file, "Network file");
    app.add_option("--profile", cfg.profile_file, "Profile file");
    app.add_option("--out", out_dir, "Write a new run directory below this path");
    app.add_flag("--json", as_json, "Print the report body as JSON");

    const std::vector<std::pair<std::string, std::string>> commands{
        {"enumerate", "List the single-peaked rankings of the canonical axis with thresholds"},
        {"rules", "Evaluate rules on a profile (file or generated)"},
        {"check", "Certify one rule/property pair over all single-peaked profiles"},
        {"table1", "Certify every rule/property pair of the overview table"},
        {"diffuse", "Run the sequential update process on a network"},
        {"spread", "Greedy maximal spreading of an extreme opinion"},
        {"generate", "Generate a seeded profile or network"},
    };
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    cfg.command = app.get_subcommands().front()->get_name();
    if (cfg.command == "rules" && app.count("--rule") == 0) cfg.rule = "all";

    try {
        const auto report = spdiff::run_experiment(cfg);
        if (as_json) {
            std::cout << report.body.dump(2) << "\n";
        } else {
            std::cout << report.text;
        }
        if (!out_dir.empty()) {
            std::cerr << "report: " << spdiff::write_run_directory(out_dir, cfg, report) << "\n";
        }
        return report.exit_code;
    } catch (const spdiff::InvariantViolation& e) {
        std::cerr << "violation: " << e.what() << "\n";
        return kExitViolation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
