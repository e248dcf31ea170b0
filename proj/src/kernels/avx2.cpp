// Compiled with -mavx2; only called after a runtime CPU check.
#include <immintrin.h>

#include "spdiff/kernels.hpp"

namespace spdiff::kernels::avx2 {

namespace {

std::int32_t horizontal_sum(__m256i x) {
    __m128i lo = _mm256_castsi256_si128(x);
    __m128i hi = _mm256_extracti128_si256(x, 1);
    __m128i s = _mm_add_epi32(lo, hi);
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(1, 0, 3, 2)));
    s = _mm_add_epi32(s, _mm_shuffle_epi32(s, _MM_SHUFFLE(2, 3, 0, 1)));
    return _mm_cvtsi128_si32(s);
}

}  // namespace

void count_pairwise_wins(const std::int32_t* positions, int n, int m, std::int32_t* wins) {
    for (int v = 0; v < n; ++v) {
        const std::int32_t* row = positions + static_cast<std::ptrdiff_t>(v) * m;
        for (int a = 0; a < m; ++a) {
            const __m256i pa = _mm256_set1_epi32(row[a]);
            std::int32_t* out = wins + static_cast<std::ptrdiff_t>(a) * m;
            int b = 0;
            for (; b + 8 <= m; b += 8) {
                const __m256i pb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + b));
                __m256i acc = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(out + b));
                // compare yields -1 per lane where row[b] > row[a]
                acc = _mm256_sub_epi32(acc, _mm256_cmpgt_epi32(pb, pa));
                _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + b), acc);
            }
            for (; b < m; ++b) out[b] += row[b] > row[a] ? 1 : 0;
        }
    }
}

void kendall_tau_batch(const std::int32_t* reference, const std::int32_t* positions, int n, int m,
                       std::int32_t* distances) {
    for (int v = 0; v < n; ++v) {
        const std::int32_t* row = positions + static_cast<std::ptrdiff_t>(v) * m;
        __m256i acc = _mm256_setzero_si256();
        std::int32_t tail = 0;
        for (int a = 0; a < m; ++a) {
            const __m256i ra = _mm256_set1_epi32(reference[a]);
            const __m256i pa = _mm256_set1_epi32(row[a]);
            int b = a + 1;
            for (; b + 8 <= m; b += 8) {
                const __m256i rb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(reference + b));
                const __m256i pb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + b));
                const __m256i disagree =
                    _mm256_xor_si256(_mm256_cmpgt_epi32(rb, ra), _mm256_cmpgt_epi32(pb, pa));
                acc = _mm256_sub_epi32(acc, disagree);
            }
            for (; b < m; ++b) tail += (reference[b] > reference[a]) != (row[b] > row[a]) ? 1 : 0;
        }
        distances[v] = horizontal_sum(acc) + tail;
    }
}

}  // namespace spdiff::kernels::avx2
