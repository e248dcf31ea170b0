#include "spdiff/properties.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

#include "spdiff/error.hpp"

namespace spdiff {

namespace {

constexpr std::array kProperties{Property::CWC, Property::CLC, Property::SPP, Property::EMC};
constexpr std::array kTableRules{RuleKind::Kemeny,   RuleKind::Mmc, RuleKind::WeakDodgson, RuleKind::Dodgson,
                                 RuleKind::Copeland, RuleKind::Stv, RuleKind::Borda};
constexpr std::size_t kMaxOffending = 4;

Profile canonical_profile(int m, std::initializer_list<std::pair<int, std::vector<Candidate>>> rows) {
    Profile p(m);
    for (const auto& [count, order] : rows) p.add(Ranking(order), count);
    return p;
}

std::vector<Ranking> collect(const RuleOutcome& outcome, const std::function<bool(const Ranking&)>& pred) {
    std::vector<Ranking> out;
    if (outcome.size() > kMaxMaterializedWinners) return out;
    for (const auto& r : outcome.winners()) {
        if (pred(r)) out.push_back(r);
        if (out.size() == kMaxOffending) break;
    }
    return out;
}

std::string candidate_list(const std::vector<Candidate>& cs, const Axis& axis) {
    std::string out = "{";
    for (std::size_t i = 0; i < cs.size(); ++i) out += (i ? ", " : "") + axis.name(cs[i]);
    return out + "}";
}

std::string ranking_text(const Ranking& r, const Axis& axis) {
    std::string out;
    for (int i = 0; i < r.size(); ++i) out += (i ? " > " : "") + axis.name(r.at(i));
    return out;
}

std::vector<Candidate> minus(const std::vector<Candidate>& a, const std::vector<Candidate>& b) {
    std::vector<Candidate> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

void check_capacity(RuleKind rule, const SearchSpace& space) {
    if (space.max_m < 1 || space.max_n < 1) throw DomainError("search space needs m >= 1 and n >= 1");
    int max_m = kMaxEnumerationCandidates;
    int max_n = std::numeric_limits<int>::max();
    switch (rule) {
    case RuleKind::Kemeny: max_m = kMaxBruteForceKemenyCandidates; break;
    case RuleKind::Dodgson:
    case RuleKind::WeakDodgson:
        max_m = kMaxDodgsonCandidates;
        max_n = kMaxDodgsonVoters;
        break;
    default: break;
    }
    if (space.max_m > max_m || space.max_n > max_n) {
        throw CapacityError(std::string(rule_name(rule)) + " cannot search m = " + std::to_string(space.max_m) +
                            ", n = " + std::to_string(space.max_n));
    }
    if (profile_count(space) > kMaxSearchProfiles) {
        throw CapacityError("search space holds " + std::to_string(profile_count(space)) +
                            " profiles, above the cap of " + std::to_string(kMaxSearchProfiles));
    }
}

}  // namespace

std::string_view property_name(Property p) {
    switch (p) {
    case Property::CWC: return "CWC";
    case Property::CLC: return "CLC";
    case Property::SPP: return "SPP";
    case Property::EMC: return "EMC";
    }
    return "?";
}

std::optional<Property> parse_property(std::string_view name) {
    for (auto p : kProperties) {
        const auto canon = property_name(p);
        if (name.size() == canon.size() &&
            std::equal(name.begin(), name.end(), canon.begin(), [](char a, char b) {
                return std::toupper(static_cast<unsigned char>(a)) == b;
            })) {
            return p;
        }
    }
    return std::nullopt;
}

std::span<const Property> all_properties() { return kProperties; }
std::span<const RuleKind> table_rules() { return kTableRules; }

std::string_view verdict_name(Verdict v) {
    return v == Verdict::Refuted ? "refuted" : "holds-on-searched-space";
}

std::optional<Witness> find_violation(RuleKind rule, Property property, const Profile& p, const Axis& axis) {
    const RuleOutcome outcome = evaluate(rule, p, &axis);
    Witness w{p, {}, {}};
    switch (property) {
    case Property::CWC: {
        const auto winners = condorcet_winners(p).weak;
        if (winners.empty()) return std::nullopt;
        const auto bad = minus(outcome.possible_tops(), winners);
        if (bad.empty()) return std::nullopt;
        w.reason = "weak Condorcet winners " + candidate_list(winners, axis) + " but a winning ranking is topped by " +
                   candidate_list(bad, axis);
        w.offending = collect(outcome, [&](const Ranking& r) {
            return std::binary_search(bad.begin(), bad.end(), r.peak());
        });
        return w;
    }
    case Property::CLC: {
        const auto losers = condorcet_losers(p).weak;
        if (losers.empty()) return std::nullopt;
        const auto bad = minus(outcome.possible_bottoms(), losers);
        if (bad.empty()) return std::nullopt;
        w.reason = "weak Condorcet losers " + candidate_list(losers, axis) + " but a winning ranking ends with " +
                   candidate_list(bad, axis);
        w.offending = collect(outcome, [&](const Ranking& r) {
            return std::binary_search(bad.begin(), bad.end(), r.last());
        });
        return w;
    }
    case Property::SPP:
    case Property::EMC: {
        if (!outcome.any_single_peaked(axis)) {
            w.reason = "no winning ranking is single-peaked";
            w.offending = collect(outcome, [](const Ranking&) { return true; });
            return w;
        }
        if (property == Property::SPP) return std::nullopt;
        for (const Ranking& target : {axis.ascending(), axis.descending()}) {
            const bool in_outcome = outcome.contains(target);
            const bool majority = 2 * p.count(target) >= p.size();
            if (in_outcome == majority) continue;
            const std::string name = ranking_text(target, axis);
            w.reason = in_outcome ? name + " wins without a weak majority (" + std::to_string(p.count(target)) +
                                        " of " + std::to_string(p.size()) + ")"
                                  : name + " is held by a weak majority (" + std::to_string(p.count(target)) + " of " +
                                        std::to_string(p.size()) + ") but does not win";
            if (in_outcome) w.offending.push_back(target);
            return w;
        }
        return std::nullopt;
    }
    }
    return std::nullopt;
}

std::uint64_t profile_count(const SearchSpace& space) {
    constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();
    auto multisets = [](std::uint64_t k, int n) -> std::uint64_t {
        unsigned __int128 c = 1;
        for (int i = 1; i <= n; ++i) {
            c = c * (k - 1 + static_cast<std::uint64_t>(i)) / static_cast<unsigned>(i);
            if (c > kSaturated) return kSaturated;
        }
        return static_cast<std::uint64_t>(c);
    };
    std::uint64_t total = 0;
    for (int m = space.exact ? space.max_m : 1; m <= space.max_m; ++m) {
        if (m > 63) return kSaturated;
        const std::uint64_t k = std::uint64_t{1} << (m - 1);
        for (int n = space.exact ? space.max_n : 1; n <= space.max_n; ++n) {
            const auto c = multisets(k, n);
            if (c > kSaturated - total) return kSaturated;
            total += c;
        }
    }
    return total;
}

void for_each_sp_profile(const SearchSpace& space, const std::function<bool(const Profile&, const Axis&)>& f) {
    if (profile_count(space) > kMaxSearchProfiles) {
        throw CapacityError("search space exceeds " + std::to_string(kMaxSearchProfiles) + " profiles");
    }
    for (int m = space.exact ? space.max_m : 1; m <= space.max_m; ++m) {
        const Axis axis = Axis::canonical(m);
        const auto sequence = enumerate_sp_rankings(axis).rankings;
        const std::size_t k = sequence.size();
        for (int n = space.exact ? space.max_n : 1; n <= space.max_n; ++n) {
            std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
            while (true) {
                Profile p(m);
                for (auto i : idx) p.add(sequence[i]);
                if (!f(p, axis)) return;
                // Next non-decreasing tuple.
                int i = n - 1;
                while (i >= 0 && idx[static_cast<std::size_t>(i)] == k - 1) --i;
                if (i < 0) break;
                const auto next = idx[static_cast<std::size_t>(i)] + 1;
                std::fill(idx.begin() + i, idx.end(), next);
            }
        }
    }
}

PropertyVerdict check_property(RuleKind rule, Property property, const SearchSpace& space) {
    check_capacity(rule, space);
    PropertyVerdict out{rule, property, space, Verdict::HoldsOnSearchedSpace, 0, std::nullopt};
    for_each_sp_profile(space, [&](const Profile& p, const Axis& axis) {
        ++out.profiles_checked;
        if (auto w = find_violation(rule, property, p, axis)) {
            out.verdict = Verdict::Refuted;
            out.witness = std::move(w);
            return false;
        }
        return true;
    });
    return out;
}

MajorityOpinionCheck check_kemeny_majority(const SearchSpace& space) {
    check_capacity(RuleKind::Kemeny, space);
    MajorityOpinionCheck out;
    for_each_sp_profile(space, [&](const Profile& p, const Axis&) {
        ++out.profiles_checked;
        for (const auto& r : p.voters()) {
            if (2 * p.count(r) <= p.size()) continue;
            ++out.profiles_with_majority;
            if (!kemeny(p).contains(r)) {
                out.verdict = Verdict::Refuted;
                out.witness = p;
                return false;
            }
            break;
        }
        return true;
    });
    return out;
}

const std::vector<FixedWitness>& fixed_witnesses() {
    static const std::vector<FixedWitness> witnesses = [] {
        // Candidates are axis positions: a = 0, b = 1, ...
        const Profile obs1 = canonical_profile(4, {{1, {0, 1, 2, 3}}, {2, {1, 2, 3, 0}}});
        const Profile dip5 = canonical_profile(
            5, {{1, {0, 1, 2, 3, 4}}, {2, {1, 0, 2, 3, 4}}, {2, {3, 4, 2, 1, 0}}, {1, {4, 3, 2, 1, 0}}});
        const Profile stv3 = canonical_profile(3, {{1, {0, 1, 2}}, {2, {2, 1, 0}}});
        const Profile borda4 = canonical_profile(4, {{3, {0, 1, 2, 3}}, {2, {2, 3, 1, 0}}});
        const Profile borda3 = canonical_profile(3, {{4, {0, 1, 2}}, {1, {1, 0, 2}}, {2, {1, 2, 0}}});
        return std::vector<FixedWitness>{
            {"mmc-condorcet-loser", RuleKind::Mmc, Property::CLC, obs1},
            {"dodgson-condorcet-loser", RuleKind::WeakDodgson, Property::CLC, obs1},
            {"dodgson-condorcet-loser", RuleKind::Dodgson, Property::CLC, obs1},
            {"dodgson-dip", RuleKind::Dodgson, Property::SPP, dip5},
            {"dodgson-dip", RuleKind::Dodgson, Property::EMC, dip5},
            {"copeland-dip", RuleKind::Copeland, Property::SPP, dip5},
            {"copeland-dip", RuleKind::Copeland, Property::EMC, dip5},
            {"stv-dip", RuleKind::Stv, Property::SPP, stv3},
            {"stv-dip", RuleKind::Stv, Property::EMC, stv3},
            {"borda-dip", RuleKind::Borda, Property::SPP, borda4},
            {"borda-dip", RuleKind::Borda, Property::EMC, borda4},
            {"borda-majority", RuleKind::Borda, Property::EMC, borda3},
        };
    }();
    return witnesses;
}

bool table1_expects_holds(RuleKind rule, Property property) {
    switch (rule) {
    case RuleKind::Kemeny:
    case RuleKind::KemenySp: return true;
    case RuleKind::Mmc:
    case RuleKind::WeakDodgson: return property != Property::CLC;
    case RuleKind::Dodgson: return property == Property::CWC;
    case RuleKind::Copeland: return property == Property::CWC || property == Property::CLC;
    case RuleKind::Stv:
    case RuleKind::Borda: return false;
    }
    return false;
}

bool table1_cell_asserted_only(RuleKind rule, Property property) {
    return rule == RuleKind::Dodgson && property == Property::CWC;
}

bool Table1Report::all_agree() const {
    return std::all_of(cells.begin(), cells.end(), [](const Table1Cell& c) { return c.agrees(); });
}

const Table1Cell& Table1Report::cell(RuleKind rule, Property property) const {
    for (const auto& c : cells) {
        if (c.rule == rule && c.property == property) return c;
    }
    throw DomainError("table1: no cell for " + std::string(rule_name(rule)) + "/" +
                      std::string(property_name(property)));
}

Table1Report table1_report(const SearchSpace& space, bool with_fixed_witnesses) {
    Table1Report report{space, with_fixed_witnesses, {}};
    for (RuleKind rule : kTableRules) {
        for (Property property : kProperties) {
            Table1Cell cell{rule, property, table1_expects_holds(rule, property), check_property(rule, property, space),
                            {}, {}, table1_cell_asserted_only(rule, property)};
            if (with_fixed_witnesses) {
                for (const auto& w : fixed_witnesses()) {
                    if (w.rule != rule || w.property != property) continue;
                    const Axis axis = Axis::canonical(w.profile.num_candidates());
                    (find_violation(rule, property, w.profile, axis) ? cell.refuting_witnesses : cell.failed_witnesses)
                        .push_back(w.name);
                }
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

}  // namespace spdiff
