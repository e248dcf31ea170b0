// AArch64 only. Kept free of C++ library headers beyond <stdint.h>.
#include <arm_neon.h>
#include <stdint.h>

namespace spdiff::kernels::neon {

void count_pairwise_wins(const int32_t* positions, int n, int m, int32_t* wins) {
    for (int v = 0; v < n; ++v) {
        const int32_t* row = positions + static_cast<long>(v) * m;
        for (int a = 0; a < m; ++a) {
            const int32x4_t pa = vdupq_n_s32(row[a]);
            int32_t* out = wins + static_cast<long>(a) * m;
            int b = 0;
            for (; b + 4 <= m; b += 4) {
                const int32x4_t pb = vld1q_s32(row + b);
                const int32x4_t gt = vreinterpretq_s32_u32(vcgtq_s32(pb, pa));
                vst1q_s32(out + b, vsubq_s32(vld1q_s32(out + b), gt));
            }
            for (; b < m; ++b) out[b] += row[b] > row[a] ? 1 : 0;
        }
    }
}

void kendall_tau_batch(const int32_t* reference, const int32_t* positions, int n, int m,
                       int32_t* distances) {
    for (int v = 0; v < n; ++v) {
        const int32_t* row = positions + static_cast<long>(v) * m;
        int32x4_t acc = vdupq_n_s32(0);
        int32_t tail = 0;
        for (int a = 0; a < m; ++a) {
            const int32x4_t ra = vdupq_n_s32(reference[a]);
            const int32x4_t pa = vdupq_n_s32(row[a]);
            int b = a + 1;
            for (; b + 4 <= m; b += 4) {
                const uint32x4_t disagree = veorq_u32(vcgtq_s32(vld1q_s32(reference + b), ra),
                                                      vcgtq_s32(vld1q_s32(row + b), pa));
                acc = vsubq_s32(acc, vreinterpretq_s32_u32(disagree));
            }
            for (; b < m; ++b) tail += (reference[b] > reference[a]) != (row[b] > row[a]) ? 1 : 0;
        }
        distances[v] = vaddvq_s32(acc) + tail;
    }
}

}  // namespace spdiff::kernels::neon
