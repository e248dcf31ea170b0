#pragma once
// Command orchestration shared by the CLI and the tests: a flat config in, a
// structured report plus tab-separated plot data out.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "spdiff/diffusion.hpp"
#include "spdiff/spread.hpp"

namespace spdiff {

/// Invalid configuration; the message names the offending field.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
    /// enumerate | rules | check | table1 | diffuse | spread | generate
    std::string command;

    std::string rule = "kemeny";  ///< or "all" for the rules command
    std::string property = "SPP";
    int m = 4;
    int n = 4;
    bool exact = false;
    bool fixed_witnesses = false;

    std::string graph = "path";
    double p = 0.5;
    std::uint64_t seed = 0;

    std::string scheduler = "round-robin";
    std::vector<VoterId> sequence;
    std::size_t max_steps = kDefaultMaxSteps;

    std::string target = "up";
    std::string order = "ascending";
    bool oracle = false;
    std::size_t oracle_states = kDefaultOracleStates;

    /// generate: profile | network
    std::string kind = "profile";

    std::string net_file;
    std::string profile_file;

    nlohmann::json to_json() const;
};

/// One tab-separated table; the first line is the header.
struct Table {
    std::string name;
    std::string tsv;
};

struct ExperimentReport {
    /// 0 when every checked assertion held, 1 on a refutation or violation.
    int exit_code = 0;
    nlohmann::json body;
    std::string text;
    std::vector<Table> tables;
    /// Extra files for the run directory (name, contents).
    std::vector<std::pair<std::string, std::string>> files;
};

/// UsageError on an invalid configuration.
void validate(const ExperimentConfig& cfg);

/// Validates and dispatches. Library errors (DomainError, CapacityError,
/// ParseError) propagate.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Creates `<out_dir>/<command>-NNNN` with the next unused number and writes
/// report.json (timestamp header, config, body), the tables and the files.
/// Existing run directories are never touched. Returns the new directory.
std::string write_run_directory(const std::string& out_dir, const ExperimentConfig& cfg,
                                const ExperimentReport& report);

}  // namespace spdiff
