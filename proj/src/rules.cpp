#include "spdiff/rules.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>

#include "spdiff/error.hpp"

namespace spdiff {

namespace {

constexpr std::array<RuleKind, 8> kAllRules{RuleKind::Kemeny,   RuleKind::KemenySp, RuleKind::Mmc,
                                           RuleKind::Borda,    RuleKind::Copeland, RuleKind::Dodgson,
                                           RuleKind::WeakDodgson, RuleKind::Stv};

// STV branches over every plurality tie; this bounds the branch count.
constexpr std::size_t kMaxStvOutcomes = 100'000;

void require_voters(const Profile& p, std::string_view rule) {
    if (p.empty()) throw DomainError(std::string(rule) + ": empty profile");
}

std::uint64_t saturating_factorial(std::size_t k) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= k; ++i) {
        if (f > std::numeric_limits<std::uint64_t>::max() / i) return std::numeric_limits<std::uint64_t>::max();
        f *= i;
    }
    return f;
}

}  // namespace

std::string_view rule_name(RuleKind rule) {
    switch (rule) {
    case RuleKind::Kemeny: return "kemeny";
    case RuleKind::KemenySp: return "kemeny-sp";
    case RuleKind::Mmc: return "mmc";
    case RuleKind::Borda: return "borda";
    case RuleKind::Copeland: return "copeland";
    case RuleKind::Dodgson: return "dodgson";
    case RuleKind::WeakDodgson: return "weak-dodgson";
    case RuleKind::Stv: return "stv";
    }
    return "?";
}

std::optional<RuleKind> parse_rule(std::string_view name) {
    for (auto r : kAllRules) {
        if (rule_name(r) == name) return r;
    }
    return std::nullopt;
}

std::span<const RuleKind> all_rules() { return kAllRules; }

// ---------------------------------------------------------------------------
// WeakOrder

WeakOrder::WeakOrder(std::vector<std::vector<Candidate>> tiers) : tiers_(std::move(tiers)) {
    for (const auto& t : tiers_) m_ += static_cast<int>(t.size());
    tier_of_.assign(static_cast<std::size_t>(m_), -1);
    for (std::size_t i = 0; i < tiers_.size(); ++i) {
        if (tiers_[i].empty()) throw DomainError("weak order: empty tier");
        std::sort(tiers_[i].begin(), tiers_[i].end());
        for (Candidate c : tiers_[i]) {
            if (c < 0 || c >= m_ || tier_of_[static_cast<std::size_t>(c)] != -1) {
                throw DomainError("weak order: tiers must partition the candidate set");
            }
            tier_of_[static_cast<std::size_t>(c)] = static_cast<int>(i);
        }
    }
}

WeakOrder WeakOrder::by_key(std::span<const std::int64_t> key) {
    std::vector<Candidate> order(key.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Candidate a, Candidate b) {
        return key[static_cast<std::size_t>(a)] < key[static_cast<std::size_t>(b)];
    });
    std::vector<std::vector<Candidate>> tiers;
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (i == 0 || key[static_cast<std::size_t>(order[i])] != key[static_cast<std::size_t>(order[i - 1])]) {
            tiers.emplace_back();
        }
        tiers.back().push_back(order[i]);
    }
    return WeakOrder(std::move(tiers));
}

bool WeakOrder::contains(const Ranking& r) const {
    if (r.size() != m_) return false;
    int prev = 0;
    for (Candidate c : r.order()) {
        const int t = tier_of_[static_cast<std::size_t>(c)];
        if (t < prev) return false;
        prev = t;
    }
    return true;
}

std::uint64_t WeakOrder::refinement_count() const {
    std::uint64_t total = 1;
    for (const auto& t : tiers_) {
        const std::uint64_t f = saturating_factorial(t.size());
        if (f != 0 && total > std::numeric_limits<std::uint64_t>::max() / f) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        total *= f;
    }
    return total;
}

bool WeakOrder::has_single_peaked_refinement(const Axis& axis) const {
    if (axis.size() != m_) throw DomainError("weak order: axis mismatch");
    // Each union of leading tiers must be a contiguous axis interval.
    int lo = m_;
    int hi = -1;
    int seen = 0;
    for (const auto& tier : tiers_) {
        for (Candidate c : tier) {
            lo = std::min(lo, axis.position(c));
            hi = std::max(hi, axis.position(c));
        }
        seen += static_cast<int>(tier.size());
        if (hi - lo + 1 != seen) return false;
    }
    return true;
}

std::vector<Ranking> WeakOrder::refinements() const {
    std::vector<Ranking> out;
    std::vector<std::vector<Candidate>> perms = tiers_;
    std::vector<Candidate> buffer;
    auto rec = [&](auto&& self, std::size_t t) -> void {
        if (t == perms.size()) {
            buffer.clear();
            for (const auto& tier : perms) buffer.insert(buffer.end(), tier.begin(), tier.end());
            out.emplace_back(buffer);
            return;
        }
        std::sort(perms[t].begin(), perms[t].end());
        do {
            self(self, t + 1);
        } while (std::next_permutation(perms[t].begin(), perms[t].end()));
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------------------
// RuleOutcome

RuleOutcome::RuleOutcome(std::variant<std::vector<Ranking>, WeakOrder> set, ScoreTrace trace, int m)
    : set_(std::move(set)), trace_(std::move(trace)), m_(m) {}

RuleOutcome RuleOutcome::explicit_set(std::vector<Ranking> winners, ScoreTrace trace) {
    if (winners.empty()) throw DomainError("rule outcome: empty winner set");
    std::sort(winners.begin(), winners.end());
    winners.erase(std::unique(winners.begin(), winners.end()), winners.end());
    const int m = winners.front().size();
    return RuleOutcome(std::move(winners), std::move(trace), m);
}

RuleOutcome RuleOutcome::weak_order(WeakOrder order, ScoreTrace trace) {
    const int m = order.num_candidates();
    return RuleOutcome(std::move(order), std::move(trace), m);
}

std::uint64_t RuleOutcome::size() const {
    if (const auto* wo = as_weak_order()) return wo->refinement_count();
    return std::get<std::vector<Ranking>>(set_).size();
}

bool RuleOutcome::contains(const Ranking& r) const {
    if (const auto* wo = as_weak_order()) return wo->contains(r);
    const auto& list = std::get<std::vector<Ranking>>(set_);
    return std::binary_search(list.begin(), list.end(), r);
}

bool RuleOutcome::any_single_peaked(const Axis& axis) const {
    if (const auto* wo = as_weak_order()) return wo->has_single_peaked_refinement(axis);
    const auto& list = std::get<std::vector<Ranking>>(set_);
    return std::any_of(list.begin(), list.end(), [&](const Ranking& r) { return is_single_peaked(r, axis); });
}

std::vector<Candidate> RuleOutcome::possible_tops() const {
    if (const auto* wo = as_weak_order()) return wo->tiers().front();
    std::vector<Candidate> out;
    for (const auto& r : std::get<std::vector<Ranking>>(set_)) out.push_back(r.peak());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Candidate> RuleOutcome::possible_bottoms() const {
    if (const auto* wo = as_weak_order()) return wo->tiers().back();
    std::vector<Candidate> out;
    for (const auto& r : std::get<std::vector<Ranking>>(set_)) out.push_back(r.last());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Ranking> RuleOutcome::winners(std::size_t cap) const {
    if (const auto* wo = as_weak_order()) {
        if (wo->refinement_count() > cap) {
            throw CapacityError("rule outcome: " + std::to_string(wo->refinement_count()) +
                                " winning rankings exceed the materialisation cap of " + std::to_string(cap));
        }
        return wo->refinements();
    }
    return std::get<std::vector<Ranking>>(set_);
}

// ---------------------------------------------------------------------------
// Kemeny

RuleOutcome kemeny(const Profile& p) {
    require_voters(p, "kemeny");
    const int m = p.num_candidates();
    if (m > kMaxBruteForceKemenyCandidates) {
        throw CapacityError("kemeny: brute force supports at most " +
                            std::to_string(kMaxBruteForceKemenyCandidates) + " candidates, got " +
                            std::to_string(m));
    }
    const auto table = majority_table(p);
    // cost[x][y]: voters disagreeing with a ranking that puts y above x.
    std::vector<int> cost(static_cast<std::size_t>(m * m));
    for (Candidate x = 0; x < m; ++x) {
        for (Candidate y = 0; y < m; ++y) cost[static_cast<std::size_t>(x * m + y)] = x == y ? 0 : table.support(x, y);
    }
    auto at = [&](Candidate x, Candidate y) { return cost[static_cast<std::size_t>(x * m + y)]; };

    // Depth-first over prefixes in lexicographic order with a pairwise lower bound.
    std::vector<Ranking> best_set;
    int best = std::numeric_limits<int>::max();
    std::vector<Candidate> prefix;
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    auto bound_rest = [&]() {
        int lb = 0;
        for (Candidate x = 0; x < m; ++x) {
            if (used[static_cast<std::size_t>(x)]) continue;
            for (Candidate y : prefix) lb += at(x, y);
            for (Candidate y = x + 1; y < m; ++y) {
                if (!used[static_cast<std::size_t>(y)]) lb += std::min(at(x, y), at(y, x));
            }
        }
        return lb;
    };
    auto rec = [&](auto&& self, int score) -> void {
        if (static_cast<int>(prefix.size()) == m) {
            if (score < best) {
                best = score;
                best_set.clear();
            }
            best_set.emplace_back(prefix);
            return;
        }
        if (score + bound_rest() > best) return;
        for (Candidate x = 0; x < m; ++x) {
            if (used[static_cast<std::size_t>(x)]) continue;
            int add = 0;
            for (Candidate y : prefix) add += at(x, y);
            used[static_cast<std::size_t>(x)] = true;
            prefix.push_back(x);
            self(self, score + add);
            prefix.pop_back();
            used[static_cast<std::size_t>(x)] = false;
        }
    };
    rec(rec, 0);
    return RuleOutcome::explicit_set(std::move(best_set), ScoreTrace{"kemeny-score", {best}, 1});
}

RuleOutcome kemeny_sp(const Profile& p, const Axis& axis) {
    require_voters(p, "kemeny-sp");
    const int m = p.num_candidates();
    if (axis.size() != m) throw DomainError("kemeny-sp: axis mismatch");
    if (!is_single_peaked(p, axis)) throw DomainError("kemeny-sp: profile is not single-peaked w.r.t. the axis");
    const auto table = majority_table(p);

    // A candidate at an end of the remaining axis interval is removed to the
    // bottom when no remaining candidate loses to it.
    auto weak_loser = [&](int pos, int lo, int hi) {
        const Candidate e = axis.at(pos);
        for (int q = lo; q <= hi; ++q) {
            if (q != pos && table.margin(axis.at(q), e) < 0) return false;
        }
        return true;
    };

    std::vector<Ranking> out;
    std::vector<Candidate> bottom_up;
    auto rec = [&](auto&& self, int lo, int hi) -> void {
        if (lo == hi) {
            bottom_up.push_back(axis.at(lo));
            out.emplace_back(std::vector<Candidate>(bottom_up.rbegin(), bottom_up.rend()));
            bottom_up.pop_back();
            if (out.size() > kMaxMaterializedWinners) {
                throw CapacityError("kemeny-sp: more than " + std::to_string(kMaxMaterializedWinners) +
                                    " single-peaked Kemeny rankings");
            }
            return;
        }
        for (int pos : {lo, hi}) {
            if (!weak_loser(pos, lo, hi)) continue;
            bottom_up.push_back(axis.at(pos));
            if (pos == lo) {
                self(self, lo + 1, hi);
            } else {
                self(self, lo, hi - 1);
            }
            bottom_up.pop_back();
        }
    };
    rec(rec, 0, m - 1);
    if (out.empty()) {
        throw InvariantViolation("kemeny-sp: no axis end is a weak Condorcet loser");
    }
    int score = 0;
    for (const auto& v : p.voters()) score += kendall_tau(out.front(), v);
    return RuleOutcome::explicit_set(std::move(out), ScoreTrace{"kemeny-score", {score}, 1});
}

// ---------------------------------------------------------------------------
// Score-order rules

RuleOutcome mmc(const Profile& p) {
    require_voters(p, "mmc");
    const int m = p.num_candidates();
    const auto table = majority_table(p);
    std::vector<std::int64_t> score(static_cast<std::size_t>(m), 0);
    for (Candidate c = 0; c < m; ++c) {
        int worst = std::numeric_limits<int>::min();
        for (Candidate d = 0; d < m; ++d) {
            if (d != c) worst = std::max(worst, table.margin(d, c));
        }
        score[static_cast<std::size_t>(c)] = m == 1 ? 0 : worst;
    }
    auto order = WeakOrder::by_key(score);
    return RuleOutcome::weak_order(std::move(order), ScoreTrace{"mmc", std::move(score), 1});
}

RuleOutcome borda(const Profile& p) {
    require_voters(p, "borda");
    const int m = p.num_candidates();
    std::vector<std::int64_t> score(static_cast<std::size_t>(m), 0);
    for (const auto& r : p.voters()) {
        for (Candidate c = 0; c < m; ++c) score[static_cast<std::size_t>(c)] += m - 1 - r.position(c);
    }
    std::vector<std::int64_t> key(score.size());
    std::transform(score.begin(), score.end(), key.begin(), [](std::int64_t s) { return -s; });
    return RuleOutcome::weak_order(WeakOrder::by_key(key), ScoreTrace{"borda", std::move(score), 1});
}

RuleOutcome copeland(const Profile& p) {
    require_voters(p, "copeland");
    const int m = p.num_candidates();
    const auto table = majority_table(p);
    // Doubled: a win is 2, a tie is 1.
    std::vector<std::int64_t> score(static_cast<std::size_t>(m), 0);
    for (Candidate c = 0; c < m; ++c) {
        for (Candidate d = 0; d < m; ++d) {
            if (d == c) continue;
            const int margin = table.margin(c, d);
            score[static_cast<std::size_t>(c)] += margin > 0 ? 2 : margin == 0 ? 1 : 0;
        }
    }
    std::vector<std::int64_t> key(score.size());
    std::transform(score.begin(), score.end(), key.begin(), [](std::int64_t s) { return -s; });
    return RuleOutcome::weak_order(WeakOrder::by_key(key), ScoreTrace{"copeland", std::move(score), 2});
}

namespace {

RuleOutcome dodgson_variant(const Profile& p, bool strict) {
    const char* name = strict ? "dodgson" : "weak-dodgson";
    require_voters(p, name);
    const int m = p.num_candidates();
    std::vector<std::int64_t> score(static_cast<std::size_t>(m), 0);
    for (Candidate c = 0; c < m; ++c) score[static_cast<std::size_t>(c)] = dodgson_score(p, c, strict);
    auto order = WeakOrder::by_key(score);
    return RuleOutcome::weak_order(std::move(order), ScoreTrace{name, std::move(score), 1});
}

}  // namespace

RuleOutcome dodgson(const Profile& p) { return dodgson_variant(p, true); }
RuleOutcome weak_dodgson(const Profile& p) { return dodgson_variant(p, false); }

// ---------------------------------------------------------------------------
// STV

RuleOutcome stv_ranking(const Profile& p) {
    require_voters(p, "stv");
    const int m = p.num_candidates();
    std::vector<Ranking> out;
    std::vector<bool> alive(static_cast<std::size_t>(m), true);
    std::vector<Candidate> eliminated;

    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 1) {
            std::vector<Candidate> order;
            for (Candidate c = 0; c < m; ++c) {
                if (alive[static_cast<std::size_t>(c)]) order.push_back(c);
            }
            order.insert(order.end(), eliminated.rbegin(), eliminated.rend());
            out.emplace_back(std::move(order));
            if (out.size() > kMaxStvOutcomes) {
                throw CapacityError("stv: more than " + std::to_string(kMaxStvOutcomes) + " elimination orders");
            }
            return;
        }
        std::vector<int> plurality(static_cast<std::size_t>(m), 0);
        for (const auto& r : p.voters()) {
            for (Candidate c : r.order()) {
                if (alive[static_cast<std::size_t>(c)]) {
                    ++plurality[static_cast<std::size_t>(c)];
                    break;
                }
            }
        }
        int lowest = std::numeric_limits<int>::max();
        for (Candidate c = 0; c < m; ++c) {
            if (alive[static_cast<std::size_t>(c)]) lowest = std::min(lowest, plurality[static_cast<std::size_t>(c)]);
        }
        for (Candidate c = 0; c < m; ++c) {
            if (!alive[static_cast<std::size_t>(c)] || plurality[static_cast<std::size_t>(c)] != lowest) continue;
            alive[static_cast<std::size_t>(c)] = false;
            eliminated.push_back(c);
            self(self, remaining - 1);
            eliminated.pop_back();
            alive[static_cast<std::size_t>(c)] = true;
        }
    };
    rec(rec, m);

    std::vector<std::int64_t> first_round(static_cast<std::size_t>(m), 0);
    for (const auto& r : p.voters()) ++first_round[static_cast<std::size_t>(r.peak())];
    return RuleOutcome::explicit_set(std::move(out), ScoreTrace{"plurality", std::move(first_round), 1});
}

// ---------------------------------------------------------------------------

RuleOutcome evaluate(RuleKind rule, const Profile& p, const Axis* axis) {
    switch (rule) {
    case RuleKind::Kemeny:
        if (p.num_candidates() > kMaxBruteForceKemenyCandidates && axis != nullptr && is_single_peaked(p, *axis)) {
            return kemeny_sp(p, *axis);
        }
        return kemeny(p);
    case RuleKind::KemenySp:
        if (axis == nullptr) throw DomainError("kemeny-sp: requires an axis");
        return kemeny_sp(p, *axis);
    case RuleKind::Mmc: return mmc(p);
    case RuleKind::Borda: return borda(p);
    case RuleKind::Copeland: return copeland(p);
    case RuleKind::Dodgson: return dodgson(p);
    case RuleKind::WeakDodgson: return weak_dodgson(p);
    case RuleKind::Stv: return stv_ranking(p);
    }
    throw DomainError("unknown rule");
}

}  // namespace spdiff
