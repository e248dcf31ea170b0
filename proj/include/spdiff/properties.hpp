#pragma once
// Certifiers for Condorcet winner/loser consistency (CWC, CLC),
// single-peakedness preservation (SPP) and extremist majority consistency
// (EMC), by exhaustive search over single-peaked profiles on the canonical
// axis plus fixed counterexample profiles.
//
// A verdict that is not refuted only says the property held on every profile
// searched.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spdiff/core.hpp"
#include "spdiff/rules.hpp"

namespace spdiff {

enum class Property { CWC, CLC, SPP, EMC };

std::string_view property_name(Property p);
std::optional<Property> parse_property(std::string_view name);
std::span<const Property> all_properties();

/// The seven rules of the overview table, in its row order.
std::span<const RuleKind> table_rules();

enum class Verdict { HoldsOnSearchedSpace, Refuted };

std::string_view verdict_name(Verdict v);

struct Witness {
    Profile profile;
    /// Winning rankings that exhibit the violation (at most a handful).
    std::vector<Ranking> offending;
    std::string reason;
};

/// Checks one profile on the canonical axis. Returns the violation, if any.
/// EMC is only defined for rules preserving single-peakedness, so an outcome
/// without a single-peaked ranking also violates EMC.
std::optional<Witness> find_violation(RuleKind rule, Property property, const Profile& p, const Axis& axis);

/// Searched space: every multiset of single-peaked rankings of size
/// 1..max_n over 1..max_m candidates (exactly max_m and max_n when `exact`).
struct SearchSpace {
    int max_m = 4;
    int max_n = 4;
    bool exact = false;
};

/// Number of profiles in the space: sum of C(2^(m-1) + n - 1, n).
std::uint64_t profile_count(const SearchSpace& space);

/// Calls f(profile, axis) for each profile, ordered by m, then n, then
/// lexicographically by sequence index of the non-decreasing ranking tuple.
/// Stops early when f returns false. CapacityError above kMaxSearchProfiles.
inline constexpr std::uint64_t kMaxSearchProfiles = 20'000'000;
void for_each_sp_profile(const SearchSpace& space, const std::function<bool(const Profile&, const Axis&)>& f);

struct PropertyVerdict {
    RuleKind rule;
    Property property;
    SearchSpace space;
    Verdict verdict = Verdict::HoldsOnSearchedSpace;
    std::uint64_t profiles_checked = 0;
    /// Present iff refuted; the first violating profile in search order.
    std::optional<Witness> witness;
};

/// CapacityError when the rule cannot evaluate profiles of the requested size.
PropertyVerdict check_property(RuleKind rule, Property property, const SearchSpace& space);
inline PropertyVerdict check_cwc(RuleKind rule, int m, int n) { return check_property(rule, Property::CWC, {m, n}); }
inline PropertyVerdict check_clc(RuleKind rule, int m, int n) { return check_property(rule, Property::CLC, {m, n}); }
inline PropertyVerdict check_spp(RuleKind rule, int m, int n) { return check_property(rule, Property::SPP, {m, n}); }
inline PropertyVerdict check_emc(RuleKind rule, int m, int n) { return check_property(rule, Property::EMC, {m, n}); }

/// Whenever a strict majority of an SP profile shares a ranking, that ranking
/// is a Kemeny ranking.
struct MajorityOpinionCheck {
    Verdict verdict = Verdict::HoldsOnSearchedSpace;
    std::uint64_t profiles_checked = 0;
    std::uint64_t profiles_with_majority = 0;
    std::optional<Profile> witness;
};

MajorityOpinionCheck check_kemeny_majority(const SearchSpace& space);

/// A fixed counterexample profile for one table cell.
struct FixedWitness {
    std::string name;
    RuleKind rule;
    Property property;
    Profile profile;
};

/// All fixed counterexamples, over canonical axes.
const std::vector<FixedWitness>& fixed_witnesses();

/// Expected verdict of the overview table.
bool table1_expects_holds(RuleKind rule, Property property);

/// Cells whose expected verdict comes with neither a proof to re-check nor a counterexample.
bool table1_cell_asserted_only(RuleKind rule, Property property);

struct Table1Cell {
    RuleKind rule;
    Property property;
    bool expected_holds;
    PropertyVerdict search;
    /// Fixed witnesses for this cell that re-verify as violations.
    std::vector<std::string> refuting_witnesses;
    /// Fixed witnesses for this cell that did not re-verify.
    std::vector<std::string> failed_witnesses;
    bool asserted_only = false;

    bool refuted() const { return search.verdict == Verdict::Refuted || !refuting_witnesses.empty(); }
    bool agrees() const { return refuted() != expected_holds && failed_witnesses.empty(); }
};

struct Table1Report {
    SearchSpace space;
    bool used_fixed_witnesses = false;
    std::vector<Table1Cell> cells;  ///< row-major: table_rules() x all_properties()

    bool all_agree() const;
    const Table1Cell& cell(RuleKind rule, Property property) const;
};

Table1Report table1_report(const SearchSpace& space, bool with_fixed_witnesses);

}  // namespace spdiff
