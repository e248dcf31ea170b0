#include "spdiff/kernels.hpp"

namespace spdiff::kernels::scalar {

void count_pairwise_wins(const std::int32_t* positions, int n, int m, std::int32_t* wins) {
    for (int v = 0; v < n; ++v) {
        const std::int32_t* row = positions + static_cast<std::ptrdiff_t>(v) * m;
        for (int a = 0; a < m; ++a) {
            const std::int32_t pa = row[a];
            std::int32_t* out = wins + static_cast<std::ptrdiff_t>(a) * m;
            for (int b = 0; b < m; ++b) out[b] += row[b] > pa ? 1 : 0;
        }
    }
}

void kendall_tau_batch(const std::int32_t* reference, const std::int32_t* positions, int n, int m,
                       std::int32_t* distances) {
    for (int v = 0; v < n; ++v) {
        const std::int32_t* row = positions + static_cast<std::ptrdiff_t>(v) * m;
        std::int32_t d = 0;
        for (int a = 0; a < m; ++a) {
            for (int b = a + 1; b < m; ++b) {
                d += (reference[b] > reference[a]) != (row[b] > row[a]) ? 1 : 0;
            }
        }
        distances[v] = d;
    }
}

}  // namespace spdiff::kernels::scalar
