#include <gtest/gtest.h>

#include <random>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "spdiff/core.hpp"
#include "spdiff/error.hpp"

using namespace spdiff;
using fx::P;
using fx::R;

TEST(Ranking, RejectsNonPermutations) {
    EXPECT_THROW(Ranking({0, 0, 1}), DomainError);
    EXPECT_THROW(Ranking({0, 3, 1}), DomainError);
    EXPECT_NO_THROW(Ranking({2, 0, 1}));
}

TEST(Ranking, PositionsAndReverse) {
    const Ranking r = R("cab");
    EXPECT_EQ(r.peak(), 2);
    EXPECT_EQ(r.last(), 1);
    EXPECT_EQ(r.position(0), 1);
    EXPECT_TRUE(r.prefers(2, 1));
    EXPECT_EQ(r.reversed(), R("bac"));
}

TEST(Axis, CanonicalAndReversed) {
    const Axis a = Axis::canonical(4);
    EXPECT_EQ(a.names(), (std::vector<std::string>{"a", "b", "c", "d"}));
    EXPECT_EQ(a.ascending(), R("abcd"));
    EXPECT_EQ(a.descending(), R("dcba"));
    EXPECT_EQ(a.distance(0, 3), 3);
    EXPECT_EQ(a.find("c"), 2);
    EXPECT_FALSE(a.find("z").has_value());
    const Axis r = a.reversed();
    EXPECT_EQ(r.ascending(), R("dcba"));
    EXPECT_EQ(r.position(0), 3);
    EXPECT_EQ(Axis::canonical(27).name(26), "c27");
}

TEST(Axis, RejectsBadOrder) {
    EXPECT_THROW(Axis({"a", "b"}, {0, 0}), DomainError);
    EXPECT_THROW(Axis({"a", "a"}), DomainError);
}

TEST(KendallTau, MatchesPairCountOnRandomPairs) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 500; ++t) {
        const int m = 1 + static_cast<int>(rng() % 9);
        const Ranking a = oracle::random_ranking(m, rng);
        const Ranking b = oracle::random_ranking(m, rng);
        const Ranking c = oracle::random_ranking(m, rng);
        ASSERT_EQ(kendall_tau(a, b), oracle::kendall_tau(a, b));
        EXPECT_EQ(kendall_tau(a, b), kendall_tau(b, a));
        EXPECT_EQ(kendall_tau(a, a), 0);
        EXPECT_EQ(kendall_tau(a, a.reversed()), pair_count(m));
        EXPECT_LE(kendall_tau(a, c), kendall_tau(a, b) + kendall_tau(b, c));
    }
}

TEST(KendallTau, SizeMismatchThrows) {
    EXPECT_THROW(kendall_tau(R("ab"), R("abc")), DomainError);
}

TEST(SinglePeaked, MatchesTripleDefinitionOnAllRankings) {
    for (int m = 1; m <= 6; ++m) {
        const Axis axis = Axis::canonical(m);
        for (const auto& r : oracle::all_rankings(m)) {
            ASSERT_EQ(is_single_peaked(r, axis), oracle::single_peaked(r, axis));
        }
    }
}

TEST(SinglePeaked, NonCanonicalAxes) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        const int m = 2 + static_cast<int>(rng() % 5);
        const Ranking perm = oracle::random_ranking(m, rng);
        const Axis axis(Axis::canonical(m).names(), std::vector<Candidate>(perm.order().begin(), perm.order().end()));
        const Ranking r = oracle::random_ranking(m, rng);
        ASSERT_EQ(is_single_peaked(r, axis), oracle::single_peaked(r, axis));
        EXPECT_TRUE(is_single_peaked(axis.ascending(), axis));
        EXPECT_TRUE(is_single_peaked(axis.descending(), axis));
    }
}

TEST(Enumeration, ThreeCandidateSequence) {
    const auto seq = enumerate_sp_rankings(Axis::canonical(3));
    EXPECT_EQ(seq.rankings, (std::vector<Ranking>{R("abc"), R("bac"), R("bca"), R("cba")}));
    EXPECT_EQ(seq.thresholds, (std::vector<std::size_t>{1, 3}));
}

TEST(Enumeration, StructureUpToTenCandidates) {
    for (int m = 1; m <= 10; ++m) {
        const Axis axis = Axis::canonical(m);
        const auto seq = enumerate_sp_rankings(axis);
        ASSERT_EQ(seq.rankings.size(), std::size_t{1} << (m - 1));
        ASSERT_EQ(seq.thresholds.size(), static_cast<std::size_t>(m - 1));
        std::set<Ranking> distinct(seq.rankings.begin(), seq.rankings.end());
        EXPECT_EQ(distinct.size(), seq.rankings.size());
        for (const auto& r : seq.rankings) ASSERT_TRUE(oracle::single_peaked(r, axis));
        for (int i = 0; i + 1 < m; ++i) {
            const std::size_t h = seq.thresholds[static_cast<std::size_t>(i)];
            for (std::size_t k = 0; k < seq.rankings.size(); ++k) {
                const Ranking& r = seq.rankings[k];
                ASSERT_EQ(r.prefers(axis.at(i), axis.at(i + 1)), k < h) << "m=" << m << " pair " << i;
                ASSERT_EQ(axis.position(r.peak()) <= i, k < h) << "m=" << m << " peak prefix " << i;
            }
        }
    }
}

TEST(Enumeration, EqualsFilteredPermutations) {
    for (int m = 1; m <= 7; ++m) {
        const Axis axis = Axis::canonical(m);
        const auto seq = enumerate_sp_rankings(axis).rankings;
        std::set<Ranking> got(seq.begin(), seq.end());
        const auto want = oracle::sp_rankings(axis);
        EXPECT_EQ(got, std::set<Ranking>(want.begin(), want.end()));
    }
}

TEST(Enumeration, CapacityGuard) {
    EXPECT_THROW(enumerate_sp_rankings(Axis::canonical(kMaxEnumerationCandidates + 1)), CapacityError);
}

TEST(Majority, MatchesBruteForceAndIsAntisymmetric) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 300; ++t) {
        const int m = 1 + static_cast<int>(rng() % 8);
        const int n = 1 + static_cast<int>(rng() % 15);
        const Profile p = oracle::random_profile(m, n, rng);
        const MajorityTable table = majority_table(p);
        for (Candidate a = 0; a < m; ++a) {
            EXPECT_EQ(table.margin(a, a), 0);
            for (Candidate b = 0; b < m; ++b) {
                if (a == b) continue;
                ASSERT_EQ(table.margin(a, b), oracle::margin(p, a, b));
                EXPECT_EQ(table.margin(a, b), -table.margin(b, a));
                EXPECT_EQ((table.margin(a, b) - n) % 2, 0);
                EXPECT_EQ(table.support(a, b) + table.support(b, a), n);
            }
        }
    }
}

TEST(Condorcet, WinnersAndLosersMatchDefinition) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 300; ++t) {
        const int m = 1 + static_cast<int>(rng() % 6);
        const int n = 1 + static_cast<int>(rng() % 8);
        const Profile p = oracle::random_profile(m, n, rng);
        const auto w = condorcet_winners(p);
        const auto l = condorcet_losers(p);
        std::vector<Candidate> ww, wl;
        std::optional<Candidate> sw;
        for (Candidate c = 0; c < m; ++c) {
            if (oracle::weak_condorcet_winner(p, c)) ww.push_back(c);
            if (oracle::weak_condorcet_loser(p, c)) wl.push_back(c);
            if (oracle::strict_condorcet_winner(p, c)) sw = c;
        }
        ASSERT_EQ(w.weak, ww);
        ASSERT_EQ(l.weak, wl);
        ASSERT_EQ(w.strict, sw);
    }
}

TEST(Condorcet, MedianPeaksAreTheWeakWinnersOnSinglePeakedProfiles) {
    for (int m = 1; m <= 5; ++m) {
        const Axis axis = Axis::canonical(m);
        const auto pool = oracle::sp_rankings(axis);
        for (int n = 1; n <= 5; ++n) {
            oracle::for_each_multiset(pool, m, n, [&](const Profile& p) {
                std::vector<Candidate> want;
                for (Candidate c = 0; c < m; ++c) {
                    if (oracle::weak_condorcet_winner(p, c)) want.push_back(c);
                }
                ASSERT_EQ(median_peak_winners(p, axis), want);
            });
        }
    }
}

TEST(Condorcet, WorstDefeatComesFromAnAxisNeighbour) {
    for (int m = 2; m <= 5; ++m) {
        const Axis axis = Axis::canonical(m);
        const auto pool = oracle::sp_rankings(axis);
        for (int n = 1; n <= 4; ++n) {
            oracle::for_each_multiset(pool, m, n, [&](const Profile& p) {
                const auto table = majority_table(p);
                for (int i = 0; i < m; ++i) {
                    int worst = std::numeric_limits<int>::min();
                    for (Candidate d = 0; d < m; ++d) {
                        if (d != i) worst = std::max(worst, table.margin(d, i));
                    }
                    int neighbour = std::numeric_limits<int>::min();
                    if (i > 0) neighbour = std::max(neighbour, table.margin(i - 1, i));
                    if (i + 1 < m) neighbour = std::max(neighbour, table.margin(i + 1, i));
                    ASSERT_EQ(neighbour, worst);
                }
            });
        }
    }
}

TEST(Condorcet, MedianRejectsNonSinglePeaked) {
    EXPECT_THROW(median_peak_winners(P({{1, "acb"}}), Axis::canonical(3)), DomainError);
}

TEST(Profile, CountAndPositionMatrix) {
    const Profile p = P({{2, "abc"}, {1, "cba"}});
    EXPECT_EQ(p.size(), 3);
    EXPECT_EQ(p.count(R("abc")), 2);
    EXPECT_EQ(p.count(R("bac")), 0);
    EXPECT_EQ(p.position_matrix(), (std::vector<std::int32_t>{0, 1, 2, 0, 1, 2, 2, 1, 0}));
    Profile q(3);
    EXPECT_THROW(q.add(R("ab")), DomainError);
}

TEST(Profile, AddingOwnVoterIsSafe) {
    Profile p = P({{1, "bca"}});
    for (int i = 0; i < 6; ++i) p.add(p[0], 5);
    EXPECT_EQ(p.count(R("bca")), 31);
}
