#include "spdiff/diffusion.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "spdiff/error.hpp"

namespace spdiff {

// ---------------------------------------------------------------------------
// Graph

Graph::Graph(int num_vertices) : adj_(static_cast<std::size_t>(std::max(num_vertices, 0))) {}

void Graph::add_edge(Vertex u, Vertex v) {
    const int n = num_vertices();
    if (u < 0 || v < 0 || u >= n || v >= n) throw DomainError("graph: edge endpoint out of range");
    if (u == v) throw DomainError("graph: self-loops are not allowed");
    if (has_edge(u, v)) return;
    auto insert_sorted = [](std::vector<Vertex>& list, Vertex x) {
        list.insert(std::lower_bound(list.begin(), list.end(), x), x);
    };
    insert_sorted(adj_[static_cast<std::size_t>(u)], v);
    insert_sorted(adj_[static_cast<std::size_t>(v)], u);
    const std::pair<Vertex, Vertex> e{std::min(u, v), std::max(u, v)};
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    const auto& list = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(list.begin(), list.end(), v);
}

bool Graph::is_connected() const {
    const int n = num_vertices();
    if (n == 0) return true;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    std::vector<Vertex> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
        const Vertex v = stack.back();
        stack.pop_back();
        for (Vertex u : neighbours(v)) {
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = true;
                ++count;
                stack.push_back(u);
            }
        }
    }
    return count == n;
}

// ---------------------------------------------------------------------------
// PreferenceNetwork

PreferenceNetwork::PreferenceNetwork(Axis axis, Graph graph, std::vector<Ranking> opinions, OpinionMode mode,
                                     std::vector<VoterId> ids)
    : axis_(std::move(axis)), graph_(std::move(graph)), opinions_(std::move(opinions)), mode_(mode),
      ids_(std::move(ids)) {
    const int n = graph_.num_vertices();
    if (static_cast<int>(opinions_.size()) != n) throw DomainError("network: one opinion per voter required");
    if (ids_.empty()) {
        for (int i = 0; i < n; ++i) ids_.push_back(static_cast<VoterId>(i));
    }
    if (static_cast<int>(ids_.size()) != n) throw DomainError("network: one id per voter required");
    if (!std::is_sorted(ids_.begin(), ids_.end()) ||
        std::adjacent_find(ids_.begin(), ids_.end()) != ids_.end()) {
        throw DomainError("network: voter ids must be strictly increasing");
    }
    for (const auto& r : opinions_) {
        if (r.size() != axis_.size()) throw DomainError("network: opinion over a different candidate set");
        if (mode_ == OpinionMode::SinglePeaked && !is_single_peaked(r, axis_)) {
            throw DomainError("network: opinion is not single-peaked w.r.t. the axis");
        }
    }
}

std::optional<Vertex> PreferenceNetwork::find(VoterId id) const {
    const auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<Vertex>(it - ids_.begin());
}

void PreferenceNetwork::check_vertex(Vertex v) const {
    if (v < 0 || v >= num_voters()) throw DomainError("network: unknown voter " + std::to_string(v));
}

const Ranking& PreferenceNetwork::opinion(Vertex v) const {
    check_vertex(v);
    return opinions_[static_cast<std::size_t>(v)];
}

void PreferenceNetwork::set_opinion(Vertex v, Ranking r) {
    check_vertex(v);
    if (r.size() != axis_.size()) throw DomainError("network: opinion over a different candidate set");
    if (mode_ == OpinionMode::SinglePeaked && !is_single_peaked(r, axis_)) {
        throw DomainError("network: opinion is not single-peaked w.r.t. the axis");
    }
    opinions_[static_cast<std::size_t>(v)] = std::move(r);
}

Profile PreferenceNetwork::neighbourhood_profile(Vertex v) const {
    check_vertex(v);
    Profile p(axis_.size());
    for (Vertex u : graph_.neighbours(v)) p.add(opinions_[static_cast<std::size_t>(u)]);
    return p;
}

// ---------------------------------------------------------------------------
// Potentials and single updates

Potentials compute_potentials(const PreferenceNetwork& net) {
    Potentials out;
    for (const auto& [u, v] : net.graph().edges()) {
        out.edge_kt += kendall_tau(net.opinion(u), net.opinion(v));
        out.peak_distance += net.axis().distance(net.opinion(u).peak(), net.opinion(v).peak());
    }
    return out;
}

namespace {

Potentials local_potential(const PreferenceNetwork& net, Vertex v, const Ranking& opinion) {
    Potentials out;
    for (Vertex u : net.graph().neighbours(v)) {
        out.edge_kt += kendall_tau(opinion, net.opinion(u));
        out.peak_distance += net.axis().distance(opinion.peak(), net.opinion(u).peak());
    }
    return out;
}

UpdateEvent apply_update_with(PreferenceNetwork& net, Vertex v, RuleKind rule, std::size_t step,
                              const Potentials& before) {
    UpdateEvent ev;
    ev.step = step;
    ev.voter = v;
    ev.before = net.opinion(v);
    ev.after = tie_broken_update(net, v, rule);
    ev.potential_before = before;
    ev.potential_after = before;
    if (ev.changed()) {
        if (net.mode() == OpinionMode::SinglePeaked && !is_single_peaked(ev.after, net.axis())) {
            throw InvariantViolation(std::string(rule_name(rule)) +
                                     " update produced a non-single-peaked opinion in a single-peaked network");
        }
        const auto old_local = local_potential(net, v, ev.before);
        const auto new_local = local_potential(net, v, ev.after);
        ev.potential_after.edge_kt += new_local.edge_kt - old_local.edge_kt;
        ev.potential_after.peak_distance += new_local.peak_distance - old_local.peak_distance;
        net.set_opinion(v, ev.after);
    }
    return ev;
}

}  // namespace

Ranking tie_broken_update(const PreferenceNetwork& net, Vertex v, RuleKind rule) {
    const Ranking& current = net.opinion(v);
    if (net.graph().neighbours(v).empty()) return current;
    const Profile hood = net.neighbourhood_profile(v);
    const RuleOutcome outcome = evaluate(rule, hood, &net.axis());
    return tie_break(outcome, TieBreakContext{net.axis(), current});
}

UpdateEvent apply_update(PreferenceNetwork& net, Vertex v, RuleKind rule, std::size_t step) {
    return apply_update_with(net, v, rule, step, compute_potentials(net));
}

std::pair<PreferenceNetwork, UpdateEvent> update_step(const PreferenceNetwork& net, Vertex v, RuleKind rule) {
    PreferenceNetwork next = net;
    UpdateEvent ev = apply_update(next, v, rule);
    return {std::move(next), std::move(ev)};
}

bool is_stable(const PreferenceNetwork& net, Vertex v, RuleKind rule) {
    return tie_broken_update(net, v, rule) == net.opinion(v);
}

bool stable_state(const PreferenceNetwork& net, RuleKind rule) {
    for (Vertex v = 0; v < net.num_voters(); ++v) {
        if (!is_stable(net, v, rule)) return false;
    }
    return true;
}

std::vector<Vertex> non_stable_voters(const PreferenceNetwork& net, RuleKind rule) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < net.num_voters(); ++v) {
        if (!is_stable(net, v, rule)) out.push_back(v);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Runs

std::string_view scheduler_name(SchedulerKind kind) {
    switch (kind) {
    case SchedulerKind::RoundRobin: return "round-robin";
    case SchedulerKind::Random: return "random";
    case SchedulerKind::Explicit: return "explicit";
    }
    return "?";
}

std::optional<SchedulerKind> parse_scheduler(std::string_view name) {
    for (auto k : {SchedulerKind::RoundRobin, SchedulerKind::Random, SchedulerKind::Explicit}) {
        if (scheduler_name(k) == name) return k;
    }
    return std::nullopt;
}

std::string_view run_status_name(RunStatus status) {
    switch (status) {
    case RunStatus::Stable: return "stable";
    case RunStatus::TimedOut: return "timed-out";
    case RunStatus::SequenceExhausted: return "sequence-exhausted";
    }
    return "?";
}

RunResult run(const PreferenceNetwork& net, RuleKind rule, const Scheduler& scheduler, std::size_t max_steps) {
    RunResult result{net, Trace{rule, scheduler, net.opinions(), {}}, RunStatus::Stable, 0, {}};
    PreferenceNetwork& cur = result.final_network;
    const int n = cur.num_voters();
    const int m = cur.axis().size();
    const bool audited = cur.mode() == OpinionMode::SinglePeaked;

    std::vector<char> stable(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) stable[static_cast<std::size_t>(v)] = is_stable(cur, v, rule);
    auto any_unstable = [&] { return std::find(stable.begin(), stable.end(), 0) != stable.end(); };

    std::mt19937_64 rng(scheduler.seed);
    std::size_t cursor = 0;  // round-robin position or explicit-sequence index
    Potentials potential = compute_potentials(cur);

    auto next_voter = [&]() -> std::optional<Vertex> {
        switch (scheduler.kind) {
        case SchedulerKind::RoundRobin:
            for (int k = 0; k < n; ++k) {
                const auto v = static_cast<Vertex>((cursor + static_cast<std::size_t>(k)) % static_cast<std::size_t>(n));
                if (!stable[static_cast<std::size_t>(v)]) {
                    cursor = static_cast<std::size_t>(v) + 1;
                    return v;
                }
            }
            return std::nullopt;
        case SchedulerKind::Random: {
            std::vector<Vertex> pool;
            for (Vertex v = 0; v < n; ++v) {
                if (!stable[static_cast<std::size_t>(v)]) pool.push_back(v);
            }
            if (pool.empty()) return std::nullopt;
            std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
            return pool[pick(rng)];
        }
        case SchedulerKind::Explicit:
            while (cursor < scheduler.sequence.size()) {
                const Vertex v = scheduler.sequence[cursor++];
                if (v < 0 || v >= n) throw DomainError("scheduler: unknown voter " + std::to_string(v));
                if (!stable[static_cast<std::size_t>(v)]) return v;
            }
            return std::nullopt;
        }
        return std::nullopt;
    };

    while (true) {
        if (!any_unstable()) {
            result.status = RunStatus::Stable;
            break;
        }
        if (result.steps >= max_steps) {
            result.status = RunStatus::TimedOut;
            break;
        }
        const auto v = next_voter();
        if (!v) {
            result.status = any_unstable() ? RunStatus::SequenceExhausted : RunStatus::Stable;
            break;
        }
        UpdateEvent ev = apply_update_with(cur, *v, rule, result.steps, potential);
        potential = ev.potential_after;
        ++result.steps;

        if (audited && rule == RuleKind::Kemeny && ev.potential_after.edge_kt >= ev.potential_before.edge_kt) {
            result.violations.push_back("step " + std::to_string(ev.step) + ": edge-KT potential did not decrease (" +
                                        std::to_string(ev.potential_before.edge_kt) + " -> " +
                                        std::to_string(ev.potential_after.edge_kt) + ")");
        }
        if (audited && rule == RuleKind::Mmc) {
            if (ev.potential_after.peak_distance > ev.potential_before.peak_distance) {
                result.violations.push_back("step " + std::to_string(ev.step) + ": peak-distance potential increased");
            }
            const auto winners = condorcet_winners(cur.neighbourhood_profile(*v)).weak;
            if (!std::binary_search(winners.begin(), winners.end(), ev.after.peak())) {
                result.violations.push_back("step " + std::to_string(ev.step) +
                                            ": new peak is not a weak Condorcet winner of the neighbourhood");
            }
        }
        result.trace.events.push_back(std::move(ev));

        stable[static_cast<std::size_t>(*v)] = is_stable(cur, *v, rule);
        for (Vertex u : cur.graph().neighbours(*v)) stable[static_cast<std::size_t>(u)] = is_stable(cur, u, rule);
    }

    if (audited && rule == RuleKind::Kemeny) {
        const auto bound = cur.graph().num_edges() * static_cast<std::size_t>(pair_count(m));
        if (result.steps > bound) {
            result.violations.push_back("kemeny run changed " + std::to_string(result.steps) +
                                        " opinions, above the |E| * C(m,2) bound of " + std::to_string(bound));
        }
    }
    return result;
}

PreferenceNetwork replay(const PreferenceNetwork& net, const Trace& trace) {
    PreferenceNetwork out = net;
    for (int v = 0; v < out.num_voters(); ++v) out.set_opinion(v, trace.initial.at(static_cast<std::size_t>(v)));
    for (const auto& ev : trace.events) out.set_opinion(ev.voter, ev.after);
    return out;
}

std::optional<CycleReport> detect_update_cycle(const Trace& trace) {
    std::vector<Ranking> state = trace.initial;
    std::map<std::vector<Ranking>, std::size_t> seen;
    seen.emplace(state, 0);
    std::size_t applied = 0;
    for (const auto& ev : trace.events) {
        ++applied;
        if (!ev.changed()) continue;
        state.at(static_cast<std::size_t>(ev.voter)) = ev.after;
        auto [it, inserted] = seen.emplace(state, applied);
        if (!inserted) return CycleReport{it->second, applied};
    }
    return std::nullopt;
}

Ranking swap_update_closure(const PreferenceNetwork& net, Vertex v) {
    const Profile hood = net.neighbourhood_profile(v);
    std::vector<Candidate> order(net.opinion(v).order().begin(), net.opinion(v).order().end());
    if (hood.empty()) return Ranking(std::move(order));
    const auto table = majority_table(hood);
    const int m = static_cast<int>(order.size());
    // Each swap follows a strict majority; on acyclic majorities this is a
    // bubble sort, so m^2 passes is ample.
    const int max_swaps = m * m + 1;
    for (int swaps = 0;; ++swaps) {
        bool swapped = false;
        for (int i = 0; i + 1 < m; ++i) {
            if (table.margin(order[static_cast<std::size_t>(i + 1)], order[static_cast<std::size_t>(i)]) > 0) {
                std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(i + 1)]);
                swapped = true;
                break;
            }
        }
        if (!swapped) break;
        if (swaps >= max_swaps) throw DomainError("swap_update_closure: majority relation is cyclic, no fixed point");
    }
    return Ranking(std::move(order));
}

}  // namespace spdiff
