#pragma once
// Maximal spreading of an extreme opinion (the axis order or its reverse)
// through a single-peaked network, and an exhaustive reachability oracle.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spdiff/diffusion.hpp"

namespace spdiff {

enum class Extreme { Up, Down };

std::string_view extreme_name(Extreme e);
std::optional<Extreme> parse_extreme(std::string_view name);
/// r-up (axis order) or r-down (reverse).
Ranking extreme_ranking(const Axis& axis, Extreme e);

/// Rules admitted by greedy_spread.
bool spread_rule_supported(RuleKind rule);

enum class SpreadOrder { Ascending, Descending, Custom };

struct SpreadOptions {
    /// Activation order inside each pass of every phase.
    SpreadOrder order = SpreadOrder::Ascending;
    /// Permutation of the vertices, for SpreadOrder::Custom.
    std::vector<Vertex> custom_order;
    /// Cap on phase-3 activations.
    std::size_t phase3_max_steps = kDefaultMaxSteps;
};

struct SpreadStep {
    int phase;  ///< 1, 2 or 3
    Vertex voter;
    Ranking before;
    Ranking after;
};

struct SpreadResult {
    Extreme target;
    Ranking target_ranking;
    std::vector<SpreadStep> sequence;
    /// Target holders after phases 1 and 2, sorted.
    std::vector<Vertex> v_star;
    /// Target holders at the end, sorted.
    std::vector<Vertex> final_target_holders;
    PreferenceNetwork final_network;
    /// False if phase 3 hit its cap with non-stable voters left.
    bool converged = true;
    std::size_t phase12_changes = 0;
    /// Most opinion changes by one voter during phases 1 and 2.
    int max_changes_per_voter = 0;
    std::uint64_t rule_evaluations = 0;
    /// Evaluation budget implied by the Kemeny step bound; 0 for other rules.
    std::uint64_t evaluation_ceiling = 0;
    /// Phase-1 activations where the target won but the tie-broken update
    /// picked another ranking.
    std::size_t tie_break_gaps = 0;
    /// Failed runtime guarantees (empty when all held).
    std::vector<std::string> violations;
};

/// Phase 1: full passes updating every voter whose tie-broken update is the
/// target, until a pass changes nothing. Phase 2: full passes updating every
/// non-stable target holder, to a fixed point. Phase 3: activate non-stable
/// voters until the network is stable or the cap is hit.
/// DomainError for unsupported rules or networks not in single-peaked mode.
SpreadResult greedy_spread(const PreferenceNetwork& net, RuleKind rule, Extreme target,
                           const SpreadOptions& options = {});

inline constexpr int kMaxOracleVoters = 6;
inline constexpr int kMaxOracleCandidates = 4;
inline constexpr std::size_t kDefaultOracleStates = 1'000'000;

struct OracleResult {
    /// Max target holders over reachable states whose target holders are all
    /// stable.
    int max_stable_target = 0;
    /// Max target holders over reachable fully stable states (-1 if none).
    int max_fully_stable_target = -1;
    std::size_t states_explored = 0;
};

/// Breadth-first search over all opinion assignments reachable by single
/// tie-broken updates. CapacityError beyond kMaxOracleVoters,
/// kMaxOracleCandidates or `max_states` states.
OracleResult brute_force_spread(const PreferenceNetwork& net, RuleKind rule, Extreme target,
                                std::size_t max_states = kDefaultOracleStates);

struct EmcCheck {
    bool in_outcome = false;
    bool weak_majority = false;

    bool consistent() const { return in_outcome == weak_majority; }
};

/// Whether the extreme ranking wins under `rule`, next to whether at least
/// half the voters hold it.
EmcCheck emc_witness(RuleKind rule, const Profile& p, const Axis& axis, Extreme target);

}  // namespace spdiff
