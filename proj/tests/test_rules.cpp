#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "spdiff/error.hpp"
#include "spdiff/rules.hpp"

using namespace spdiff;
using fx::P;
using fx::R;

namespace {

const Profile kObs1 = P({{1, "abcd"}, {2, "bcda"}});
const Profile kDip5 = P({{1, "abcde"}, {2, "bacde"}, {2, "decba"}, {1, "edcba"}});

std::vector<std::int64_t> values(const RuleOutcome& o) { return o.trace().values; }

Ranking relabel(const Ranking& r, const std::vector<Candidate>& sigma) {
    std::vector<Candidate> order;
    for (Candidate c : r.order()) order.push_back(sigma[static_cast<std::size_t>(c)]);
    return Ranking(order);
}

Profile relabel(const Profile& p, const std::vector<Candidate>& sigma) {
    Profile q(p.num_candidates());
    for (const auto& r : p.voters()) q.add(relabel(r, sigma));
    return q;
}

}  // namespace

TEST(Names, RoundTrip) {
    for (RuleKind r : all_rules()) EXPECT_EQ(parse_rule(rule_name(r)), r);
    EXPECT_FALSE(parse_rule("plurality").has_value());
    EXPECT_EQ(rule_name(RuleKind::WeakDodgson), "weak-dodgson");
}

TEST(Fixtures, MmcScores) {
    const auto o = mmc(kObs1);
    EXPECT_EQ(values(o), (std::vector<std::int64_t>{1, -1, 3, 3}));
    EXPECT_EQ(o.winners(), (std::vector<Ranking>{R("bacd"), R("badc")}));
}

TEST(Fixtures, WeakDodgsonAndDodgsonScoresOnThreeVoters) {
    for (Candidate c = 0; c < 4; ++c) {
        EXPECT_EQ(dodgson_score(kObs1, c, false), (std::vector<int>{3, 0, 2, 4})[static_cast<std::size_t>(c)]);
        EXPECT_EQ(dodgson_score(kObs1, c, true), (std::vector<int>{3, 0, 2, 4})[static_cast<std::size_t>(c)]);
    }
    EXPECT_EQ(values(weak_dodgson(kObs1)), (std::vector<std::int64_t>{3, 0, 2, 4}));
    EXPECT_EQ(values(dodgson(kObs1)), (std::vector<std::int64_t>{3, 0, 2, 4}));
    EXPECT_EQ(dodgson(kObs1).winners(), std::vector<Ranking>{R("bcad")});
}

TEST(Fixtures, DodgsonAndCopelandOnFiveCandidates) {
    EXPECT_EQ(values(dodgson(kDip5)), (std::vector<std::int64_t>{6, 3, 4, 3, 6}));
    const auto c = copeland(kDip5);
    EXPECT_EQ(c.trace().denominator, 2);
    EXPECT_EQ(values(c), (std::vector<std::int64_t>{3, 5, 4, 5, 3}));
    EXPECT_FALSE(dodgson(kDip5).any_single_peaked(Axis::canonical(5)));
    EXPECT_FALSE(c.any_single_peaked(Axis::canonical(5)));
}

TEST(Fixtures, StvEliminationOrder) {
    EXPECT_EQ(stv_ranking(P({{1, "abc"}, {2, "cba"}})).winners(), std::vector<Ranking>{R("cab")});
}

TEST(Fixtures, BordaScores) {
    const auto o = borda(P({{3, "abcd"}, {2, "cdba"}}));
    EXPECT_EQ(values(o), (std::vector<std::int64_t>{9, 8, 9, 4}));
    EXPECT_FALSE(o.any_single_peaked(Axis::canonical(4)));
    const auto e = borda(P({{4, "abc"}, {1, "bac"}, {2, "bca"}}));
    EXPECT_EQ(values(e), (std::vector<std::int64_t>{9, 10, 2}));
    EXPECT_FALSE(e.contains(R("abc")));
}

TEST(Fixtures, KemenyWinner) {
    const Profile p = P({{2, "abc"}, {1, "bca"}, {1, "cba"}});
    EXPECT_TRUE(kemeny(p).contains(R("bac")));
    EXPECT_EQ(p.count(R("bac")), 0);
    EXPECT_EQ(kemeny(p).winners(), (std::vector<Ranking>{R("abc"), R("bac"), R("bca")}));
    EXPECT_EQ(kemeny_sp(p, Axis::canonical(3)).winners(), kemeny(p).winners());
}

TEST(Mmc, UnanimousProfileTiesTheTwoLosers) {
    const auto o = mmc(P({{1, "abc"}}));
    EXPECT_EQ(values(o), (std::vector<std::int64_t>{-1, 1, 1}));
    EXPECT_EQ(o.winners(), (std::vector<Ranking>{R("abc"), R("acb")}));
    EXPECT_EQ(tie_break(o, {Axis::canonical(3), R("cba")}), R("abc"));
}

TEST(Kemeny, MatchesBruteForceOnRandomProfiles) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 150; ++t) {
        const int m = 1 + static_cast<int>(rng() % 5);
        const int n = 1 + static_cast<int>(rng() % 7);
        const Profile p = oracle::random_profile(m, n, rng);
        const auto o = kemeny(p);
        ASSERT_EQ(o.winners(), oracle::kemeny(p));
        ASSERT_EQ(o.trace().values.front(), oracle::kemeny_score(p, oracle::kemeny(p).front()));
    }
}

TEST(Kemeny, SinglePeakedPathEqualsBruteForceRestricted) {
    for (int m = 1; m <= 4; ++m) {
        const Axis axis = Axis::canonical(m);
        const auto pool = oracle::sp_rankings(axis);
        for (int n = 1; n <= 4; ++n) {
            oracle::for_each_multiset(pool, m, n, [&](const Profile& p) {
                std::vector<Ranking> want;
                for (const auto& r : oracle::kemeny(p)) {
                    if (oracle::single_peaked(r, axis)) want.push_back(r);
                }
                ASSERT_FALSE(want.empty());
                ASSERT_EQ(kemeny_sp(p, axis).winners(), want);
            });
        }
    }
}

TEST(Kemeny, MajorityOpinionIsAKemenyRanking) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 200; ++t) {
        const int m = 2 + static_cast<int>(rng() % 4);
        const auto pool = oracle::sp_rankings(Axis::canonical(m));
        const int n = 1 + static_cast<int>(rng() % 7);
        Profile p = oracle::random_sp_profile(pool, m, n, rng);
        p.add(pool[rng() % pool.size()], n + 1);
        ASSERT_TRUE(kemeny(p).contains(p[p.size() - 1]));
    }
}

TEST(Kemeny, CapacityAndDispatch) {
    const Axis axis = Axis::canonical(9);
    Profile p(9);
    p.add(axis.ascending());
    p.add(axis.descending());
    EXPECT_THROW(kemeny(p), CapacityError);
    const auto o = evaluate(RuleKind::Kemeny, p, &axis);
    EXPECT_TRUE(o.contains(axis.ascending()));
    EXPECT_TRUE(o.contains(axis.descending()));
    EXPECT_THROW(kemeny_sp(P({{1, "acb"}}), Axis::canonical(3)), DomainError);
    EXPECT_THROW(evaluate(RuleKind::KemenySp, p), DomainError);
}

TEST(Rules, EmptyProfileThrows) {
    for (RuleKind r : all_rules()) {
        const Axis axis = Axis::canonical(3);
        EXPECT_THROW(evaluate(r, Profile(3), &axis), DomainError) << rule_name(r);
    }
}

TEST(Rules, DodgsonCapacityGuards) {
    std::mt19937_64 rng(4);
    EXPECT_THROW(dodgson(oracle::random_profile(kMaxDodgsonCandidates + 1, 3, rng)), CapacityError);
    EXPECT_THROW(weak_dodgson(oracle::random_profile(4, kMaxDodgsonVoters + 1, rng)), CapacityError);
}

TEST(Rules, AnonymousAndNeutral) {
    std::mt19937_64 rng(17);
    const RuleKind rules[] = {RuleKind::Kemeny, RuleKind::Mmc,     RuleKind::Borda, RuleKind::Copeland,
                              RuleKind::Dodgson, RuleKind::WeakDodgson, RuleKind::Stv};
    for (int t = 0; t < 60; ++t) {
        const int m = 1 + static_cast<int>(rng() % 4);
        const int n = 1 + static_cast<int>(rng() % 6);
        const Profile p = oracle::random_profile(m, n, rng);
        std::vector<Ranking> shuffled(p.voters().begin(), p.voters().end());
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const Profile q(m, shuffled);
        const Ranking s = oracle::random_ranking(m, rng);
        const std::vector<Candidate> sigma(s.order().begin(), s.order().end());
        const Profile moved = relabel(p, sigma);
        for (RuleKind r : rules) {
            const auto base = evaluate(r, p).winners();
            ASSERT_EQ(evaluate(r, q).winners(), base) << rule_name(r);
            std::vector<Ranking> want;
            for (const auto& w : base) want.push_back(relabel(w, sigma));
            std::sort(want.begin(), want.end());
            ASSERT_EQ(evaluate(r, moved).winners(), want) << rule_name(r);
        }
    }
}

TEST(Rules, CondorcetWinnerRankedFirstByConsistentRules) {
    std::mt19937_64 rng(23);
    const RuleKind rules[] = {RuleKind::Kemeny, RuleKind::Mmc, RuleKind::Copeland, RuleKind::Dodgson,
                              RuleKind::WeakDodgson};
    for (int t = 0; t < 300; ++t) {
        const int m = 2 + static_cast<int>(rng() % 3);
        const int n = 1 + static_cast<int>(rng() % 6);
        const Profile p = oracle::random_profile(m, n, rng);
        const auto w = condorcet_winners(p);
        if (!w.strict) continue;
        for (RuleKind r : rules) {
            for (const auto& top : evaluate(r, p).possible_tops()) ASSERT_EQ(top, *w.strict) << rule_name(r);
        }
    }
}

TEST(Copeland, ThreeCandidatesOnSinglePeakedProfiles) {
    const Axis axis = Axis::canonical(3);
    const auto pool = oracle::sp_rankings(axis);
    for (int n = 1; n <= 8; ++n) {
        oracle::for_each_multiset(pool, 3, n, [&](const Profile& p) {
            const auto k = kemeny(p).winners();
            const auto c = copeland(p).winners();
            if (n % 2 == 1) {
                ASSERT_EQ(c, k);
            } else {
                for (const auto& r : c) ASSERT_TRUE(std::binary_search(k.begin(), k.end(), r));
            }
            ASSERT_TRUE(copeland(p).any_single_peaked(axis));
        });
    }
    const Profile even = P({{1, "abc"}, {1, "bca"}});
    EXPECT_EQ(copeland(even).winners(), std::vector<Ranking>{R("bac")});
    EXPECT_EQ(kemeny(even).winners().size(), 3u);
}

TEST(Borda, ThreeCandidatesPreserveSinglePeakedness) {
    const Axis axis = Axis::canonical(3);
    const auto pool = oracle::sp_rankings(axis);
    for (int n = 1; n <= 8; ++n) {
        oracle::for_each_multiset(pool, 3, n, [&](const Profile& p) { ASSERT_TRUE(borda(p).any_single_peaked(axis)); });
    }
}

TEST(Stv, BranchesOnPluralityTies) {
    const auto o = stv_ranking(P({{1, "abc"}, {1, "cba"}}));
    EXPECT_EQ(o.winners(), (std::vector<Ranking>{R("acb"), R("cab")}));
    const auto u = stv_ranking(P({{1, "abc"}}));
    EXPECT_EQ(u.winners(), (std::vector<Ranking>{R("abc"), R("acb")}));
}

TEST(WeakOrder, RefinementsAndQueries) {
    const std::int64_t key[] = {2, 0, 2, 1};
    const WeakOrder w = WeakOrder::by_key(key);
    EXPECT_EQ(w.tiers(), (std::vector<std::vector<Candidate>>{{1}, {3}, {0, 2}}));
    EXPECT_EQ(w.refinement_count(), 2u);
    EXPECT_EQ(w.refinements(), (std::vector<Ranking>{R("bdac"), R("bdca")}));
    EXPECT_TRUE(w.contains(R("bdca")));
    EXPECT_FALSE(w.contains(R("dbca")));
    EXPECT_FALSE(w.has_single_peaked_refinement(Axis::canonical(4)));
    EXPECT_TRUE(WeakOrder({{1, 2}, {0, 3}}).has_single_peaked_refinement(Axis::canonical(4)));
}

TEST(WeakOrder, SinglePeakedRefinementMatchesEnumeration) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 300; ++t) {
        const int m = 1 + static_cast<int>(rng() % 6);
        std::vector<std::int64_t> key(static_cast<std::size_t>(m));
        for (auto& k : key) k = static_cast<std::int64_t>(rng() % 3);
        const WeakOrder w = WeakOrder::by_key(key);
        const Axis axis = Axis::canonical(m);
        bool any = false;
        for (const auto& r : w.refinements()) any = any || oracle::single_peaked(r, axis);
        ASSERT_EQ(w.has_single_peaked_refinement(axis), any);
    }
}

TEST(WeakOrder, MaterialisationCap) {
    const RuleOutcome o = borda(P({{1, "abcdefgh"}, {1, "hgfedcba"}}));
    EXPECT_EQ(o.size(), 40320u);
    EXPECT_THROW(o.winners(), CapacityError);
    EXPECT_EQ(o.winners(50000).size(), 40320u);
}
