#pragma once
// Data-parallel inner loops over position matrices.
//
// Each kernel has a scalar reference implementation and, where the build
// target allows, AVX2 and NEON variants. The variant used by the library is
// picked once at first use from the running CPU; SPDIFF_FORCE_SCALAR=1 in
// the environment pins the scalar path. All variants are required to agree
// bit-for-bit with the scalar one.
//
// Layout: `positions` is voter-major, row v holds the rank position of every
// candidate for voter v (row length m).

#include <cstdint>
#include <span>
#include <string_view>

namespace spdiff::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();

/// wins[a*m + b] += #{v : voter v ranks a above b}.
void count_pairwise_wins(std::span<const std::int32_t> positions, int n, int m,
                         std::span<std::int32_t> wins);

/// distances[v] = Kendall tau between `reference` (m positions) and row v.
void kendall_tau_batch(std::span<const std::int32_t> reference,
                       std::span<const std::int32_t> positions, int n, int m,
                       std::span<std::int32_t> distances);

// Explicit variants, for equivalence tests and benchmarks. Calling a variant
// whose ISA is unavailable is undefined behaviour; check isa_available first.
namespace scalar {
void count_pairwise_wins(const std::int32_t* positions, int n, int m, std::int32_t* wins);
void kendall_tau_batch(const std::int32_t* reference, const std::int32_t* positions, int n, int m,
                       std::int32_t* distances);
}  // namespace scalar

namespace avx2 {
void count_pairwise_wins(const std::int32_t* positions, int n, int m, std::int32_t* wins);
void kendall_tau_batch(const std::int32_t* reference, const std::int32_t* positions, int n, int m,
                       std::int32_t* distances);
}  // namespace avx2

namespace neon {
void count_pairwise_wins(const std::int32_t* positions, int n, int m, std::int32_t* wins);
void kendall_tau_batch(const std::int32_t* reference, const std::int32_t* positions, int n, int m,
                       std::int32_t* distances);
}  // namespace neon

}  // namespace spdiff::kernels
