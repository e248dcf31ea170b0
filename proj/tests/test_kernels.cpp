#include <gtest/gtest.h>

#include <cstdlib>
#include <random>
#include <string>

#include "oracles.hpp"
#include "spdiff/kernels.hpp"

using namespace spdiff;
namespace k = spdiff::kernels;

namespace {

struct Case {
    int n;
    int m;
    std::vector<std::int32_t> positions;
    std::vector<std::int32_t> reference;
};

Case random_case(std::mt19937_64& rng) {
    Case c;
    c.n = static_cast<int>(rng() % 70);
    c.m = 1 + static_cast<int>(rng() % 24);
    const Profile p = oracle::random_profile(c.m, c.n, rng);
    c.positions = p.position_matrix();
    const Ranking ref = oracle::random_ranking(c.m, rng);
    c.reference.assign(ref.positions().begin(), ref.positions().end());
    return c;
}

std::vector<std::int32_t> wins_with(void (*f)(const std::int32_t*, int, int, std::int32_t*), const Case& c) {
    std::vector<std::int32_t> w(static_cast<std::size_t>(c.m * c.m), 7);
    f(c.positions.data(), c.n, c.m, w.data());
    return w;
}

std::vector<std::int32_t> kt_with(void (*f)(const std::int32_t*, const std::int32_t*, int, int, std::int32_t*),
                                  const Case& c) {
    std::vector<std::int32_t> d(static_cast<std::size_t>(c.n), -1);
    f(c.reference.data(), c.positions.data(), c.n, c.m, d.data());
    return d;
}

}  // namespace

TEST(Kernels, ScalarMatchesDefinition) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        const Case c = random_case(rng);
        const auto w = wins_with(k::scalar::count_pairwise_wins, c);
        for (int a = 0; a < c.m; ++a) {
            for (int b = 0; b < c.m; ++b) {
                int want = 7;
                for (int v = 0; v < c.n; ++v) {
                    const auto* row = &c.positions[static_cast<std::size_t>(v * c.m)];
                    if (row[a] < row[b]) ++want;
                }
                ASSERT_EQ(w[static_cast<std::size_t>(a * c.m + b)], want);
            }
        }
        const auto d = kt_with(k::scalar::kendall_tau_batch, c);
        for (int v = 0; v < c.n; ++v) {
            int want = 0;
            const auto* row = &c.positions[static_cast<std::size_t>(v * c.m)];
            for (int a = 0; a < c.m; ++a) {
                for (int b = a + 1; b < c.m; ++b) {
                    if ((row[a] < row[b]) != (c.reference[static_cast<std::size_t>(a)] < c.reference[static_cast<std::size_t>(b)])) ++want;
                }
            }
            ASSERT_EQ(d[static_cast<std::size_t>(v)], want);
        }
    }
}

TEST(Kernels, VectorVariantsMatchScalar) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 300; ++t) {
        const Case c = random_case(rng);
        const auto ws = wins_with(k::scalar::count_pairwise_wins, c);
        const auto ds = kt_with(k::scalar::kendall_tau_batch, c);
#ifdef SPDIFF_HAVE_AVX2
        if (k::isa_available(k::Isa::Avx2)) {
            ASSERT_EQ(wins_with(k::avx2::count_pairwise_wins, c), ws);
            ASSERT_EQ(kt_with(k::avx2::kendall_tau_batch, c), ds);
        }
#endif
#ifdef SPDIFF_HAVE_NEON
        if (k::isa_available(k::Isa::Neon)) {
            ASSERT_EQ(wins_with(k::neon::count_pairwise_wins, c), ws);
            ASSERT_EQ(kt_with(k::neon::kendall_tau_batch, c), ds);
        }
#endif
        std::vector<std::int32_t> w(static_cast<std::size_t>(c.m * c.m), 7);
        k::count_pairwise_wins(c.positions, c.n, c.m, w);
        ASSERT_EQ(w, ws);
        std::vector<std::int32_t> d(static_cast<std::size_t>(c.n), -1);
        k::kendall_tau_batch(c.reference, c.positions, c.n, c.m, d);
        ASSERT_EQ(d, ds);
    }
}

TEST(Kernels, DispatchHonoursForceScalar) {
    const char* force = std::getenv("SPDIFF_FORCE_SCALAR");
    if (force != nullptr && std::string(force) == "1") {
        EXPECT_EQ(k::active_isa(), k::Isa::Scalar);
    } else {
        EXPECT_TRUE(k::isa_available(k::active_isa()));
    }
    EXPECT_TRUE(k::isa_available(k::Isa::Scalar));
    EXPECT_EQ(k::isa_name(k::Isa::Scalar), "scalar");
}
