#include <algorithm>
#include <limits>

#include "spdiff/error.hpp"
#include "spdiff/kernels.hpp"
#include "spdiff/rules.hpp"

namespace spdiff {

bool axis_lex_less(const Ranking& a, const Ranking& b, const Axis& axis) {
    for (int i = 0; i < a.size(); ++i) {
        const int pa = axis.position(a.at(i));
        const int pb = axis.position(b.at(i));
        if (pa != pb) return pa < pb;
    }
    return false;
}

namespace {

Ranking pick_explicit(const std::vector<Ranking>& winners, const TieBreakContext& ctx) {
    std::vector<const Ranking*> pool;
    for (const auto& r : winners) {
        if (is_single_peaked(r, ctx.axis)) pool.push_back(&r);
    }
    if (pool.empty()) {
        for (const auto& r : winners) pool.push_back(&r);
    }

    const int m = ctx.current_opinion.size();
    std::vector<std::int32_t> positions;
    positions.reserve(pool.size() * static_cast<std::size_t>(m));
    for (const Ranking* r : pool) positions.insert(positions.end(), r->positions().begin(), r->positions().end());
    std::vector<std::int32_t> reference(ctx.current_opinion.positions().begin(), ctx.current_opinion.positions().end());
    std::vector<std::int32_t> dist(pool.size());
    kernels::kendall_tau_batch(reference, positions, static_cast<int>(pool.size()), m, dist);

    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
        if (dist[i] < dist[best] || (dist[i] == dist[best] && axis_lex_less(*pool[i], *pool[best], ctx.axis))) {
            best = i;
        }
    }
    return *pool[best];
}

// Depth-first over single-peaked refinements in axis-lexicographic order,
// pruning prefixes whose inversion count against the current opinion cannot
// strictly beat the best found so far.
Ranking pick_single_peaked_refinement(const WeakOrder& order, const TieBreakContext& ctx) {
    const Axis& axis = ctx.axis;
    const Ranking& current = ctx.current_opinion;
    const auto& tiers = order.tiers();
    const int m = order.num_candidates();

    std::vector<int> tier_of(static_cast<std::size_t>(m));
    for (std::size_t t = 0; t < tiers.size(); ++t) {
        for (Candidate c : tiers[t]) tier_of[static_cast<std::size_t>(c)] = static_cast<int>(t);
    }

    std::vector<Candidate> prefix;
    std::vector<Candidate> best_ranking;
    int best = std::numeric_limits<int>::max();
    std::vector<int> left_in_tier;
    for (const auto& t : tiers) left_in_tier.push_back(static_cast<int>(t.size()));

    auto rec = [&](auto&& self, std::size_t tier, int lo, int hi, int cost) -> void {
        if (cost >= best) return;
        if (static_cast<int>(prefix.size()) == m) {
            best = cost;
            best_ranking = prefix;
            return;
        }
        if (left_in_tier[tier] == 0) {
            self(self, tier + 1, lo, hi, cost);
            return;
        }
        auto place = [&](Candidate x, int nlo, int nhi) {
            int add = 0;
            for (Candidate y : prefix) add += current.prefers(x, y) ? 1 : 0;
            prefix.push_back(x);
            --left_in_tier[tier];
            self(self, tier, nlo, nhi, cost + add);
            ++left_in_tier[tier];
            prefix.pop_back();
        };
        if (prefix.empty()) {
            std::vector<int> starts;
            for (Candidate c : tiers[tier]) starts.push_back(axis.position(c));
            std::sort(starts.begin(), starts.end());
            for (int pos : starts) place(axis.at(pos), pos, pos);
            return;
        }
        if (lo > 0 && tier_of[static_cast<std::size_t>(axis.at(lo - 1))] == static_cast<int>(tier)) {
            place(axis.at(lo - 1), lo - 1, hi);
        }
        if (hi + 1 < m && tier_of[static_cast<std::size_t>(axis.at(hi + 1))] == static_cast<int>(tier)) {
            place(axis.at(hi + 1), lo, hi + 1);
        }
    };
    rec(rec, 0, 0, -1, 0);
    if (best_ranking.empty()) throw InvariantViolation("tie_break: no single-peaked refinement found");
    return Ranking(std::move(best_ranking));
}

// Sorting each tier by the current opinion removes every avoidable inversion,
// so this refinement is the unique Kendall-tau minimiser.
Ranking pick_closest_refinement(const WeakOrder& order, const Ranking& current) {
    std::vector<Candidate> out;
    for (auto tier : order.tiers()) {
        std::sort(tier.begin(), tier.end(), [&](Candidate a, Candidate b) { return current.prefers(a, b); });
        out.insert(out.end(), tier.begin(), tier.end());
    }
    return Ranking(std::move(out));
}

}  // namespace

Ranking tie_break(const RuleOutcome& outcome, const TieBreakContext& ctx) {
    const int m = outcome.num_candidates();
    if (ctx.axis.size() != m || ctx.current_opinion.size() != m) {
        throw DomainError("tie_break: context is over a different candidate set");
    }
    if (const auto* wo = outcome.as_weak_order()) {
        if (wo->has_single_peaked_refinement(ctx.axis)) return pick_single_peaked_refinement(*wo, ctx);
        return pick_closest_refinement(*wo, ctx.current_opinion);
    }
    return pick_explicit(outcome.winners(), ctx);
}

}  // namespace spdiff
