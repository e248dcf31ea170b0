#include "spdiff/spread.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "spdiff/error.hpp"

namespace spdiff {

std::string_view extreme_name(Extreme e) { return e == Extreme::Up ? "up" : "down"; }

std::optional<Extreme> parse_extreme(std::string_view name) {
    if (name == "up") return Extreme::Up;
    if (name == "down") return Extreme::Down;
    return std::nullopt;
}

Ranking extreme_ranking(const Axis& axis, Extreme e) {
    return e == Extreme::Up ? axis.ascending() : axis.descending();
}

bool spread_rule_supported(RuleKind rule) {
    return rule == RuleKind::Kemeny || rule == RuleKind::Mmc || rule == RuleKind::WeakDodgson;
}

EmcCheck emc_witness(RuleKind rule, const Profile& p, const Axis& axis, Extreme target) {
    const Ranking r = extreme_ranking(axis, target);
    EmcCheck out;
    out.weak_majority = 2 * p.count(r) >= p.size();
    out.in_outcome = evaluate(rule, p, &axis).contains(r);
    return out;
}

namespace {

std::vector<Vertex> activation_order(int n, const SpreadOptions& options) {
    std::vector<Vertex> order(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
    switch (options.order) {
    case SpreadOrder::Ascending: break;
    case SpreadOrder::Descending: std::reverse(order.begin(), order.end()); break;
    case SpreadOrder::Custom: {
        auto sorted = options.custom_order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != order) throw DomainError("greedy_spread: custom order must be a permutation of the voters");
        order = options.custom_order;
        break;
    }
    }
    return order;
}

std::vector<Vertex> holders(const PreferenceNetwork& net, const Ranking& r) {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < net.num_voters(); ++v) {
        if (net.opinion(v) == r) out.push_back(v);
    }
    return out;
}

}  // namespace

SpreadResult greedy_spread(const PreferenceNetwork& net, RuleKind rule, Extreme target, const SpreadOptions& options) {
    if (!spread_rule_supported(rule)) {
        throw DomainError("greedy_spread: rule " + std::string(rule_name(rule)) +
                          " is not supported (kemeny, mmc, weak-dodgson)");
    }
    if (net.mode() != OpinionMode::SinglePeaked) throw DomainError("greedy_spread: network must be single-peaked");

    const int n = net.num_voters();
    const int m = net.axis().size();
    const Ranking star = extreme_ranking(net.axis(), target);
    const auto order = activation_order(n, options);

    SpreadResult res{target, star, {}, {}, {}, net, true, 0, 0, 0, 0, 0, {}};
    PreferenceNetwork& cur = res.final_network;
    std::vector<int> changes(static_cast<std::size_t>(n), 0);

    auto update_of = [&](Vertex v) {
        ++res.rule_evaluations;
        return tie_broken_update(cur, v, rule);
    };
    auto apply = [&](int phase, Vertex v, Ranking after) {
        res.sequence.push_back({phase, v, cur.opinion(v), after});
        cur.set_opinion(v, std::move(after));
        if (phase < 3) {
            ++res.phase12_changes;
            ++changes[static_cast<std::size_t>(v)];
        }
    };

    // Phase 1.
    for (bool changed = true; changed;) {
        changed = false;
        for (Vertex v : order) {
            if (cur.opinion(v) == star) continue;
            Ranking next = update_of(v);
            if (next == star) {
                if (!emc_witness(rule, cur.neighbourhood_profile(v), cur.axis(), target).weak_majority) {
                    res.violations.push_back("phase 1: voter " + std::to_string(v) +
                                             " adopted the target without a weak neighbourhood majority");
                }
                apply(1, v, std::move(next));
                changed = true;
            } else if (!cur.graph().neighbours(v).empty() &&
                       emc_witness(rule, cur.neighbourhood_profile(v), cur.axis(), target).in_outcome) {
                ++res.tie_break_gaps;
            }
        }
    }

    // Phase 2.
    for (bool changed = true; changed;) {
        changed = false;
        for (Vertex v : order) {
            if (cur.opinion(v) != star) continue;
            Ranking next = update_of(v);
            if (next != star) {
                apply(2, v, std::move(next));
                changed = true;
            }
        }
    }

    res.v_star = holders(cur, star);
    res.max_changes_per_voter = n ? *std::max_element(changes.begin(), changes.end()) : 0;
    if (res.phase12_changes > 2 * static_cast<std::size_t>(n)) {
        res.violations.push_back("phases 1-2 made " + std::to_string(res.phase12_changes) + " changes, above 2|V| = " +
                                 std::to_string(2 * n));
    }
    if (res.max_changes_per_voter > 2) {
        res.violations.push_back("a voter changed its opinion " + std::to_string(res.max_changes_per_voter) +
                                 " times during phases 1-2");
    }
    for (Vertex v : order) {
        if (cur.opinion(v) == star) continue;
        if (update_of(v) == star) {
            res.violations.push_back("after phase 2 voter " + std::to_string(v) + " could still adopt the target");
        }
    }

    // Phase 3: non-target voters first, then any other non-stable voter.
    std::vector<char> stable(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) stable[static_cast<std::size_t>(v)] = update_of(v) == cur.opinion(v);
    std::size_t steps = 0;
    while (true) {
        std::optional<Vertex> pick;
        for (Vertex v : order) {
            if (!stable[static_cast<std::size_t>(v)] && cur.opinion(v) != star) {
                pick = v;
                break;
            }
        }
        if (!pick) {
            for (Vertex v : order) {
                if (!stable[static_cast<std::size_t>(v)]) {
                    pick = v;
                    break;
                }
            }
        }
        if (!pick) break;
        if (steps == options.phase3_max_steps) {
            res.converged = false;
            break;
        }
        ++steps;
        Ranking next = update_of(*pick);
        apply(3, *pick, std::move(next));
        stable[static_cast<std::size_t>(*pick)] = update_of(*pick) == cur.opinion(*pick);
        for (Vertex u : cur.graph().neighbours(*pick)) {
            stable[static_cast<std::size_t>(u)] = update_of(u) == cur.opinion(u);
        }
    }

    res.final_target_holders = holders(cur, star);
    if (res.final_target_holders != res.v_star) {
        res.violations.push_back("the target holders changed during phase 3");
    }
    if (res.converged && !stable_state(cur, rule)) res.violations.push_back("final network is not stable");

    if (rule == RuleKind::Kemeny) {
        const auto nv = static_cast<std::uint64_t>(n);
        const auto kemeny_steps = cur.graph().num_edges() * static_cast<std::uint64_t>(pair_count(m));
        // Phases 1-2: at most |V| + 1 passes each, plus one scan. Phase 3:
        // one scan plus at most |V| rechecks per step.
        res.evaluation_ceiling = (2 * nv + 3) * nv + (kemeny_steps + 1) * (nv + 1);
        if (res.rule_evaluations > res.evaluation_ceiling) {
            res.violations.push_back("rule evaluations " + std::to_string(res.rule_evaluations) +
                                     " exceed the ceiling " + std::to_string(res.evaluation_ceiling));
        }
    }
    return res;
}

OracleResult brute_force_spread(const PreferenceNetwork& net, RuleKind rule, Extreme target, std::size_t max_states) {
    const int n = net.num_voters();
    const int m = net.axis().size();
    if (n > kMaxOracleVoters || m > kMaxOracleCandidates) {
        throw CapacityError("brute_force_spread: supports |V| <= " + std::to_string(kMaxOracleVoters) + ", m <= " +
                            std::to_string(kMaxOracleCandidates));
    }
    if (net.mode() != OpinionMode::SinglePeaked) throw DomainError("brute_force_spread: network must be single-peaked");

    const auto sequence = enumerate_sp_rankings(net.axis()).rankings;
    std::unordered_map<Ranking, std::uint64_t> index;
    for (std::size_t i = 0; i < sequence.size(); ++i) index.emplace(sequence[i], i);
    const int bits = std::max(1, static_cast<int>(std::bit_width(sequence.size() - 1)));
    const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
    const std::uint64_t star = index.at(extreme_ranking(net.axis(), target));

    auto encode = [&](const PreferenceNetwork& s) {
        std::uint64_t key = 0;
        for (Vertex v = n - 1; v >= 0; --v) key = (key << bits) | index.at(s.opinion(v));
        return key;
    };
    auto opinion_at = [&](std::uint64_t key, Vertex v) { return (key >> (bits * v)) & mask; };

    // Memo on (voter, own opinion, neighbour opinions).
    std::unordered_map<std::uint64_t, std::uint64_t> memo;
    PreferenceNetwork scratch = net;
    auto next_opinion = [&](std::uint64_t key, Vertex v) {
        std::uint64_t local = opinion_at(key, v);
        for (Vertex u : net.graph().neighbours(v)) local = (local << bits) | opinion_at(key, u);
        local = local * static_cast<std::uint64_t>(kMaxOracleVoters) + static_cast<std::uint64_t>(v);
        if (auto it = memo.find(local); it != memo.end()) return it->second;
        scratch.set_opinion(v, sequence[opinion_at(key, v)]);
        for (Vertex u : net.graph().neighbours(v)) scratch.set_opinion(u, sequence[opinion_at(key, u)]);
        const std::uint64_t out = index.at(tie_broken_update(scratch, v, rule));
        memo.emplace(local, out);
        return out;
    };

    OracleResult res;
    std::unordered_set<std::uint64_t> seen;
    std::deque<std::uint64_t> queue;
    const auto start = encode(net);
    seen.insert(start);
    queue.push_back(start);
    while (!queue.empty()) {
        const auto key = queue.front();
        queue.pop_front();
        ++res.states_explored;
        bool all_stable = true;
        bool targets_stable = true;
        int target_count = 0;
        for (Vertex v = 0; v < n; ++v) {
            const auto own = opinion_at(key, v);
            const auto next = next_opinion(key, v);
            if (own == star) ++target_count;
            if (next == own) continue;
            all_stable = false;
            if (own == star) targets_stable = false;
            const auto shift = static_cast<std::uint64_t>(bits * v);
            const auto succ = (key & ~(mask << shift)) | (next << shift);
            if (seen.insert(succ).second) {
                if (seen.size() > max_states) {
                    throw CapacityError("brute_force_spread: more than " + std::to_string(max_states) +
                                        " reachable states");
                }
                queue.push_back(succ);
            }
        }
        if (targets_stable) res.max_stable_target = std::max(res.max_stable_target, target_count);
        if (all_stable) res.max_fully_stable_target = std::max(res.max_fully_stable_target, target_count);
    }
    return res;
}

}  // namespace spdiff
