#include <cstdlib>
#include <string_view>

#include "spdiff/error.hpp"
#include "spdiff/kernels.hpp"

namespace spdiff::kernels {

namespace {

using PairwiseFn = void (*)(const std::int32_t*, int, int, std::int32_t*);
using KendallFn = void (*)(const std::int32_t*, const std::int32_t*, int, int, std::int32_t*);

struct Table {
    Isa isa;
    PairwiseFn pairwise;
    KendallFn kendall;
};

Table make_table(Isa isa) {
    switch (isa) {
#if defined(SPDIFF_HAVE_AVX2)
    case Isa::Avx2:
        return {Isa::Avx2, &avx2::count_pairwise_wins, &avx2::kendall_tau_batch};
#endif
#if defined(SPDIFF_HAVE_NEON)
    case Isa::Neon:
        return {Isa::Neon, &neon::count_pairwise_wins, &neon::kendall_tau_batch};
#endif
    default:
        return {Isa::Scalar, &scalar::count_pairwise_wins, &scalar::kendall_tau_batch};
    }
}

bool forced_scalar() {
    const char* env = std::getenv("SPDIFF_FORCE_SCALAR");
    return env != nullptr && std::string_view(env) != "" && std::string_view(env) != "0";
}

const Table& table() {
    static const Table t = [] {
        if (forced_scalar()) return make_table(Isa::Scalar);
        if (isa_available(Isa::Avx2)) return make_table(Isa::Avx2);
        if (isa_available(Isa::Neon)) return make_table(Isa::Neon);
        return make_table(Isa::Scalar);
    }();
    return t;
}

}  // namespace

std::string_view isa_name(Isa isa) {
    switch (isa) {
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
    case Isa::Scalar: break;
    }
    return "scalar";
}

bool isa_available(Isa isa) {
    switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(SPDIFF_HAVE_AVX2)
        return __builtin_cpu_supports("avx2");
#else
        return false;
#endif
    case Isa::Neon:
#if defined(SPDIFF_HAVE_NEON)
        return true;
#else
        return false;
#endif
    }
    return false;
}

Isa active_isa() { return table().isa; }

void count_pairwise_wins(std::span<const std::int32_t> positions, int n, int m,
                         std::span<std::int32_t> wins) {
    if (positions.size() < static_cast<std::size_t>(n) * m || wins.size() < static_cast<std::size_t>(m) * m) {
        throw DomainError("count_pairwise_wins: buffer too small");
    }
    table().pairwise(positions.data(), n, m, wins.data());
}

void kendall_tau_batch(std::span<const std::int32_t> reference, std::span<const std::int32_t> positions,
                       int n, int m, std::span<std::int32_t> distances) {
    if (reference.size() < static_cast<std::size_t>(m) ||
        positions.size() < static_cast<std::size_t>(n) * m ||
        distances.size() < static_cast<std::size_t>(n)) {
        throw DomainError("kendall_tau_batch: buffer too small");
    }
    table().kendall(reference.data(), positions.data(), n, m, distances.data());
}

}  // namespace spdiff::kernels
