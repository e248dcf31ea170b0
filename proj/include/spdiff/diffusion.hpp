#pragma once
// Sequential opinion diffusion on undirected preference networks.
//
// An active voter v replaces its opinion by the tie-broken winner of the rule
// applied to its OPEN neighbourhood N(v) (v itself is never included). A
// voter with no neighbours is stable by definition.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spdiff/core.hpp"
#include "spdiff/rules.hpp"

namespace spdiff {

using Vertex = int;
using VoterId = std::uint64_t;

/// Undirected simple graph on vertices 0..n-1.
class Graph {
public:
    explicit Graph(int num_vertices = 0);

    int num_vertices() const noexcept { return static_cast<int>(adj_.size()); }
    std::size_t num_edges() const noexcept { return edges_.size(); }

    /// DomainError on self-loops or out-of-range endpoints; duplicate edges
    /// are ignored.
    void add_edge(Vertex u, Vertex v);
    bool has_edge(Vertex u, Vertex v) const;
    const std::vector<Vertex>& neighbours(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
    /// Edges as (u, v) with u < v, sorted.
    const std::vector<std::pair<Vertex, Vertex>>& edges() const noexcept { return edges_; }
    bool is_connected() const;

    friend bool operator==(const Graph&, const Graph&) = default;

private:
    std::vector<std::vector<Vertex>> adj_;
    std::vector<std::pair<Vertex, Vertex>> edges_;
};

enum class OpinionMode {
    SinglePeaked,  ///< every opinion must stay single-peaked w.r.t. the axis
    Free,
};

class PreferenceNetwork {
public:
    /// Vertex i carries `opinions[i]` and external label `ids[i]`; ids must be
    /// strictly increasing. Empty `ids` means 0..n-1.
    PreferenceNetwork(Axis axis, Graph graph, std::vector<Ranking> opinions,
                      OpinionMode mode = OpinionMode::SinglePeaked, std::vector<VoterId> ids = {});

    const Axis& axis() const noexcept { return axis_; }
    const Graph& graph() const noexcept { return graph_; }
    OpinionMode mode() const noexcept { return mode_; }
    int num_voters() const noexcept { return graph_.num_vertices(); }
    const std::vector<VoterId>& ids() const noexcept { return ids_; }
    std::optional<Vertex> find(VoterId id) const;

    const Ranking& opinion(Vertex v) const;
    const std::vector<Ranking>& opinions() const noexcept { return opinions_; }
    /// Enforces single-peakedness in SinglePeaked mode (DomainError).
    void set_opinion(Vertex v, Ranking r);

    /// P[N(v)], neighbours in ascending vertex order.
    Profile neighbourhood_profile(Vertex v) const;

    friend bool operator==(const PreferenceNetwork&, const PreferenceNetwork&) = default;

private:
    void check_vertex(Vertex v) const;

    Axis axis_;
    Graph graph_;
    std::vector<Ranking> opinions_;
    OpinionMode mode_;
    std::vector<VoterId> ids_;
};

/// Sum over edges of Kendall tau, and of axis distance between peaks.
struct Potentials {
    std::int64_t edge_kt = 0;
    std::int64_t peak_distance = 0;

    friend bool operator==(const Potentials&, const Potentials&) = default;
};

Potentials compute_potentials(const PreferenceNetwork& net);

struct UpdateEvent {
    std::size_t step = 0;
    Vertex voter = 0;
    Ranking before;
    Ranking after;
    Potentials potential_before;
    Potentials potential_after;

    bool changed() const { return before != after; }
};

/// tie_break(rule(P[N(v)]), {axis, opinion of v}); the current opinion for
/// isolated voters.
Ranking tie_broken_update(const PreferenceNetwork& net, Vertex v, RuleKind rule);

/// In-place update of v. Potentials in the event are computed from
/// `potential_before` plus the local change. InvariantViolation if a
/// single-peaked network would receive a non-single-peaked opinion.
UpdateEvent apply_update(PreferenceNetwork& net, Vertex v, RuleKind rule, std::size_t step = 0);

/// Pure form of apply_update.
std::pair<PreferenceNetwork, UpdateEvent> update_step(const PreferenceNetwork& net, Vertex v, RuleKind rule);

bool is_stable(const PreferenceNetwork& net, Vertex v, RuleKind rule);
bool stable_state(const PreferenceNetwork& net, RuleKind rule);
std::vector<Vertex> non_stable_voters(const PreferenceNetwork& net, RuleKind rule);

enum class SchedulerKind { RoundRobin, Random, Explicit };

std::string_view scheduler_name(SchedulerKind kind);
std::optional<SchedulerKind> parse_scheduler(std::string_view name);

struct Scheduler {
    SchedulerKind kind = SchedulerKind::RoundRobin;
    std::uint64_t seed = 0;
    /// Activation order for SchedulerKind::Explicit.
    std::vector<Vertex> sequence;
};

/// Initial state plus the changing activations, enough to replay a run.
struct Trace {
    RuleKind rule = RuleKind::Kemeny;
    Scheduler scheduler;
    std::vector<Ranking> initial;
    std::vector<UpdateEvent> events;
};

enum class RunStatus {
    Stable,             ///< every voter stable
    TimedOut,           ///< max_steps reached with non-stable voters left
    SequenceExhausted,  ///< explicit scheduler ran out of activations
};

std::string_view run_status_name(RunStatus status);

struct RunResult {
    PreferenceNetwork final_network;
    Trace trace;
    RunStatus status = RunStatus::Stable;
    std::size_t steps = 0;
    /// Audit failures of the convergence laws (empty when all held).
    std::vector<std::string> violations;
};

/// Default activation cap.
inline constexpr std::size_t kDefaultMaxSteps = 100'000;

/// Activates non-stable voters per the scheduler until the network is stable
/// or `max_steps` activations have happened. In single-peaked mode the run is
/// audited: Kemeny changes must strictly lower edge-KT and stay within
/// |E| * C(m,2) changes; MMC changes must not raise peak distance and must
/// leave the voter's peak a weak Condorcet winner of its neighbourhood.
RunResult run(const PreferenceNetwork& net, RuleKind rule, const Scheduler& scheduler,
              std::size_t max_steps = kDefaultMaxSteps);

/// Replays the trace's events from its initial state.
PreferenceNetwork replay(const PreferenceNetwork& net, const Trace& trace);

struct CycleReport {
    std::size_t first_seen_step;  ///< events applied when the state first appeared
    std::size_t repeat_step;      ///< events applied when it reappeared
};

/// First return to an earlier full opinion assignment with at least one
/// opinion change in between.
std::optional<CycleReport> detect_update_cycle(const Trace& trace);

/// Repeatedly swaps adjacent candidates in v's opinion whenever a strict
/// majority of N(v) orders the pair the other way; returns the fixed point.
Ranking swap_update_closure(const PreferenceNetwork& net, Vertex v);

}  // namespace spdiff
