#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "spdiff/error.hpp"
#include "spdiff/properties.hpp"

using namespace spdiff;
using fx::P;
using fx::R;

namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Violation by definition, from the materialised winner set.
bool violates(RuleKind rule, Property prop, const Profile& p, const Axis& axis) {
    const auto winners = evaluate(rule, p, &axis).winners();
    bool any_sp = false;
    for (const auto& r : winners) any_sp = any_sp || oracle::single_peaked(r, axis);
    switch (prop) {
    case Property::CWC:
        for (const auto& r : winners) {
            if (!oracle::weak_condorcet_winner(p, r.peak())) return true;
        }
        return false;
    case Property::CLC:
        for (const auto& r : winners) {
            if (!oracle::weak_condorcet_loser(p, r.last())) return true;
        }
        return false;
    case Property::SPP: return !any_sp;
    case Property::EMC: {
        if (!any_sp) return true;
        for (const Ranking& e : {axis.ascending(), axis.descending()}) {
            const bool in = std::find(winners.begin(), winners.end(), e) != winners.end();
            if (in != (2 * p.count(e) >= p.size())) return true;
        }
        return false;
    }
    }
    return false;
}

}  // namespace

TEST(Names, PropertiesRoundTrip) {
    for (Property p : all_properties()) EXPECT_EQ(parse_property(property_name(p)), p);
    EXPECT_EQ(parse_property("emc"), Property::EMC);
    EXPECT_FALSE(parse_property("XYZ").has_value());
    EXPECT_EQ(verdict_name(Verdict::HoldsOnSearchedSpace), "holds-on-searched-space");
    EXPECT_EQ(table_rules().size(), 7u);
}

TEST(Search, CountsAndEnumeratesEveryMultiset) {
    for (int m = 1; m <= 4; ++m) {
        for (int n = 1; n <= 4; ++n) {
            std::uint64_t want = 0;
            for (int mm = 1; mm <= m; ++mm) {
                for (int nn = 1; nn <= n; ++nn) want += choose((1u << (mm - 1)) + nn - 1, nn);
            }
            EXPECT_EQ(profile_count({m, n}), want);
            std::uint64_t seen = 0;
            std::set<std::pair<int, std::vector<Ranking>>> distinct;
            for_each_sp_profile({m, n}, [&](const Profile& p, const Axis& axis) {
                ++seen;
                EXPECT_TRUE(is_single_peaked(p, axis));
                std::vector<Ranking> sorted(p.voters().begin(), p.voters().end());
                std::sort(sorted.begin(), sorted.end());
                distinct.emplace(p.num_candidates(), sorted);
                return true;
            });
            EXPECT_EQ(seen, want);
            EXPECT_EQ(distinct.size(), want);
        }
    }
    EXPECT_EQ(profile_count({3, 2, true}), 10u);
}

TEST(Search, StopsEarlyAndGuardsSize) {
    int calls = 0;
    for_each_sp_profile({4, 4}, [&](const Profile&, const Axis&) { return ++calls < 5; });
    EXPECT_EQ(calls, 5);
    EXPECT_THROW(for_each_sp_profile({12, 40}, [](const Profile&, const Axis&) { return true; }), CapacityError);
}

TEST(Violation, AgreesWithDefinitionOnRandomProfiles) {
    std::mt19937_64 rng(81);
    for (int t = 0; t < 200; ++t) {
        const int m = 1 + static_cast<int>(rng() % 5);
        const Axis axis = Axis::canonical(m);
        const auto pool = oracle::sp_rankings(axis);
        const Profile p = oracle::random_sp_profile(pool, m, 1 + static_cast<int>(rng() % 5), rng);
        for (RuleKind rule : table_rules()) {
            for (Property prop : all_properties()) {
                ASSERT_EQ(find_violation(rule, prop, p, axis).has_value(), violates(rule, prop, p, axis))
                    << rule_name(rule) << " " << property_name(prop);
            }
        }
    }
}

TEST(Violation, WitnessNamesOffendingRankings) {
    const auto w = find_violation(RuleKind::Mmc, Property::CLC, P({{1, "abcd"}, {2, "bcda"}}), Axis::canonical(4));
    ASSERT_TRUE(w.has_value());
    EXPECT_FALSE(w->offending.empty());
    EXPECT_LE(w->offending.size(), 4u);
    EXPECT_FALSE(w->reason.empty());
    EXPECT_FALSE(find_violation(RuleKind::Kemeny, Property::CWC, P({{1, "abcd"}, {2, "bcda"}}), Axis::canonical(4)));
}

TEST(Checks, PreservingRulesHoldOnSmallSpace) {
    for (RuleKind rule : {RuleKind::Kemeny, RuleKind::Mmc, RuleKind::WeakDodgson}) {
        for (Property prop : {Property::CWC, Property::SPP, Property::EMC}) {
            const auto v = check_property(rule, prop, {4, 4});
            EXPECT_EQ(v.verdict, Verdict::HoldsOnSearchedSpace) << rule_name(rule) << " " << property_name(prop);
            EXPECT_EQ(v.profiles_checked, profile_count({4, 4}));
            EXPECT_FALSE(v.witness.has_value());
        }
    }
    EXPECT_EQ(check_clc(RuleKind::Kemeny, 4, 4).verdict, Verdict::HoldsOnSearchedSpace);
    EXPECT_EQ(check_clc(RuleKind::Copeland, 4, 4).verdict, Verdict::HoldsOnSearchedSpace);
}

TEST(Checks, RefutationsCarryTheFirstWitness) {
    const auto v = check_emc(RuleKind::Borda, 3, 7);
    ASSERT_EQ(v.verdict, Verdict::Refuted);
    ASSERT_TRUE(v.witness.has_value());
    EXPECT_TRUE(find_violation(RuleKind::Borda, Property::EMC, v.witness->profile, Axis::canonical(3)).has_value());
    EXPECT_EQ(check_property(RuleKind::Borda, Property::EMC, {3, 7, true}).witness->profile,
              P({{4, "abc"}, {1, "bac"}, {2, "bca"}}));
    EXPECT_LT(v.profiles_checked, profile_count({3, 7}));
}

TEST(Checks, CapacityGuards) {
    EXPECT_THROW(check_property(RuleKind::Dodgson, Property::SPP, {7, 2}), CapacityError);
    EXPECT_THROW(check_property(RuleKind::WeakDodgson, Property::SPP, {3, 11}), CapacityError);
}

TEST(Checks, MajorityOpinionIsKemeny) {
    const auto v = check_kemeny_majority({4, 5});
    EXPECT_EQ(v.verdict, Verdict::HoldsOnSearchedSpace);
    EXPECT_GT(v.profiles_with_majority, 0u);
    EXPECT_EQ(v.profiles_checked, profile_count({4, 5}));
}

TEST(Witnesses, AllReverify) {
    EXPECT_EQ(fixed_witnesses().size(), 12u);
    for (const auto& w : fixed_witnesses()) {
        const Axis axis = Axis::canonical(w.profile.num_candidates());
        EXPECT_TRUE(is_single_peaked(w.profile, axis)) << w.name;
        EXPECT_TRUE(find_violation(w.rule, w.property, w.profile, axis).has_value()) << w.name;
        EXPECT_FALSE(table1_expects_holds(w.rule, w.property)) << w.name;
    }
}

TEST(Table1, ExpectedMatrix) {
    const char* rows[] = {"1111", "1011", "1011", "1000", "1100", "0000", "0000"};
    int i = 0;
    for (RuleKind rule : table_rules()) {
        int j = 0;
        for (Property prop : all_properties()) {
            EXPECT_EQ(table1_expects_holds(rule, prop), rows[i][j] == '1') << rule_name(rule) << property_name(prop);
            ++j;
        }
        ++i;
    }
    EXPECT_TRUE(table1_cell_asserted_only(RuleKind::Dodgson, Property::CWC));
}

TEST(Table1, ReproducesAtFourByFour) {
    const auto report = table1_report({4, 4}, true);
    EXPECT_EQ(report.cells.size(), 28u);
    for (const auto& c : report.cells) {
        EXPECT_TRUE(c.agrees()) << rule_name(c.rule) << " " << property_name(c.property);
    }
    EXPECT_TRUE(report.all_agree());
    const auto& borda_spp = report.cell(RuleKind::Borda, Property::SPP);
    EXPECT_EQ(borda_spp.search.verdict, Verdict::HoldsOnSearchedSpace);
    EXPECT_EQ(borda_spp.refuting_witnesses, std::vector<std::string>{"borda-dip"});
    EXPECT_FALSE(table1_report({4, 4}, false).all_agree());
}
