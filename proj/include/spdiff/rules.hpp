#pragma once
// Ranking rules as set-valued aggregators, and the tie-breaking resolver that
// turns a winner set into the single ranking an active voter adopts.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "spdiff/core.hpp"

namespace spdiff {

enum class RuleKind { Kemeny, KemenySp, Mmc, Borda, Copeland, Dodgson, WeakDodgson, Stv };

/// CLI selector: kemeny | kemeny-sp | mmc | borda | copeland | dodgson | weak-dodgson | stv.
std::string_view rule_name(RuleKind rule);
std::optional<RuleKind> parse_rule(std::string_view name);
std::span<const RuleKind> all_rules();

/// Largest winner set a score-order outcome will materialise.
inline constexpr std::size_t kMaxMaterializedWinners = 10'000;
/// Brute-force Kemeny enumerates m! rankings.
inline constexpr int kMaxBruteForceKemenyCandidates = 8;
inline constexpr int kMaxDodgsonCandidates = 6;
inline constexpr int kMaxDodgsonVoters = 10;

/// Scores behind an outcome, for reporting. `values[c]` is candidate c's
/// score divided by `denominator` (Copeland keeps doubled half-points), or a
/// single profile-level value for Kemeny.
struct ScoreTrace {
    std::string metric;
    std::vector<std::int64_t> values;
    int denominator = 1;
};

/// Ordered tiers of tied candidates; its refinements are all rankings that
/// list the tiers in order and each tier in any internal order.
class WeakOrder {
public:
    explicit WeakOrder(std::vector<std::vector<Candidate>> tiers);

    /// Candidates with lower key first; equal keys share a tier.
    static WeakOrder by_key(std::span<const std::int64_t> key);

    const std::vector<std::vector<Candidate>>& tiers() const noexcept { return tiers_; }
    int num_candidates() const noexcept { return m_; }

    bool contains(const Ranking& r) const;
    /// Product of tier factorials, saturating at UINT64_MAX.
    std::uint64_t refinement_count() const;
    /// Whether some refinement is single-peaked w.r.t. `axis`.
    bool has_single_peaked_refinement(const Axis& axis) const;
    /// All refinements in lexicographic order of candidate index.
    std::vector<Ranking> refinements() const;

private:
    std::vector<std::vector<Candidate>> tiers_;
    std::vector<int> tier_of_;
    int m_ = 0;
};

/// Winner set R(P): either an explicit ranking list or all refinements of a
/// weak order, plus the score trace that produced it.
class RuleOutcome {
public:
    static RuleOutcome explicit_set(std::vector<Ranking> winners, ScoreTrace trace);
    static RuleOutcome weak_order(WeakOrder order, ScoreTrace trace);

    bool is_weak_order() const noexcept { return std::holds_alternative<WeakOrder>(set_); }
    const WeakOrder* as_weak_order() const noexcept { return std::get_if<WeakOrder>(&set_); }
    const ScoreTrace& trace() const noexcept { return trace_; }
    int num_candidates() const noexcept { return m_; }

    std::uint64_t size() const;
    bool contains(const Ranking& r) const;
    bool any_single_peaked(const Axis& axis) const;
    /// Candidates ranked first (resp. last) by at least one winner, sorted.
    std::vector<Candidate> possible_tops() const;
    std::vector<Candidate> possible_bottoms() const;

    /// Sorted winner list. CapacityError above `cap` rankings.
    std::vector<Ranking> winners(std::size_t cap = kMaxMaterializedWinners) const;

private:
    RuleOutcome(std::variant<std::vector<Ranking>, WeakOrder> set, ScoreTrace trace, int m);

    std::variant<std::vector<Ranking>, WeakOrder> set_;
    ScoreTrace trace_;
    int m_ = 0;
};

struct TieBreakContext {
    const Axis& axis;
    const Ranking& current_opinion;
};

/// (1) keep single-peaked winners if any exist, (2) minimise Kendall tau to the
/// current opinion, (3) smallest in axis-lexicographic order.
Ranking tie_break(const RuleOutcome& outcome, const TieBreakContext& ctx);

/// Axis-lexicographic comparison used by stage (3): rankings compared
/// position by position through the axis positions of their candidates.
bool axis_lex_less(const Ranking& a, const Ranking& b, const Axis& axis);

// Rules. All throw DomainError on an empty profile.

/// Brute force over all m! rankings. CapacityError above kMaxBruteForceKemenyCandidates.
RuleOutcome kemeny(const Profile& p);
/// Single-peaked Kemeny rankings via repeated removal of a weak Condorcet loser
/// at an axis end. DomainError if `p` is not single-peaked w.r.t. `axis`.
RuleOutcome kemeny_sp(const Profile& p, const Axis& axis);
RuleOutcome mmc(const Profile& p);
RuleOutcome borda(const Profile& p);
RuleOutcome copeland(const Profile& p);
RuleOutcome dodgson(const Profile& p);
RuleOutcome weak_dodgson(const Profile& p);
RuleOutcome stv_ranking(const Profile& p);

/// Minimum number of adjacent swaps in voters' rankings that make `c` a
/// strict (or, with strict = false, weak) Condorcet winner.
int dodgson_score(const Profile& p, Candidate c, bool strict);

/// Dispatch by selector. `axis` is required for kemeny-sp; for kemeny above
/// the brute-force bound it enables the single-peaked path when `p` is
/// single-peaked w.r.t. it.
RuleOutcome evaluate(RuleKind rule, const Profile& p, const Axis* axis = nullptr);

}  // namespace spdiff
