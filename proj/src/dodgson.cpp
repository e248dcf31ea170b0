// Exact Dodgson and weak-Dodgson scores.
//
// Only swaps that lift c past a candidate change c's pairwise margins, so an
// optimal plan is a lift amount k_v per voter: voter v pays k_v swaps and
// flips c's comparison against the k_v candidates directly above c. The
// search runs over lift vectors voter by voter, memoised on the residual
// deficit against every opponent.

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "spdiff/error.hpp"
#include "spdiff/rules.hpp"

namespace spdiff {

int dodgson_score(const Profile& p, Candidate c, bool strict) {
    const int m = p.num_candidates();
    const int n = p.size();
    if (m > kMaxDodgsonCandidates || n > kMaxDodgsonVoters) {
        throw CapacityError("dodgson: supports m <= " + std::to_string(kMaxDodgsonCandidates) + ", n <= " +
                            std::to_string(kMaxDodgsonVoters) + "; got m = " + std::to_string(m) +
                            ", n = " + std::to_string(n));
    }
    if (c < 0 || c >= m) throw DomainError("dodgson: unknown candidate");
    if (n == 0) throw DomainError("dodgson: empty profile");

    const auto table = majority_table(p);
    // Opponents get dense slots 0..m-2.
    std::vector<int> slot(static_cast<std::size_t>(m), -1);
    std::vector<int> need;
    for (Candidate d = 0; d < m; ++d) {
        if (d == c) continue;
        slot[static_cast<std::size_t>(d)] = static_cast<int>(need.size());
        const int margin = table.margin(c, d);
        // Each voter that flips d > c into c > d adds 2 to the margin.
        const int deficit = strict ? (margin > 0 ? 0 : -margin / 2 + 1) : (margin >= 0 ? 0 : (-margin + 1) / 2);
        need.push_back(deficit);
    }
    if (std::all_of(need.begin(), need.end(), [](int x) { return x == 0; })) return 0;

    // above[v]: opponent slots above c in voter v's ranking, nearest first.
    std::vector<std::vector<int>> above(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const Ranking& r = p[v];
        for (int pos = r.position(c) - 1; pos >= 0; --pos) {
            above[static_cast<std::size_t>(v)].push_back(slot[static_cast<std::size_t>(r.at(pos))]);
        }
    }

    const int base = n + 2;
    auto encode = [&](const std::vector<int>& residual) {
        std::uint64_t key = 0;
        for (int x : residual) key = key * static_cast<std::uint64_t>(base) + static_cast<std::uint64_t>(x);
        return key;
    };
    constexpr int kInfeasible = std::numeric_limits<int>::max() / 4;
    std::vector<std::unordered_map<std::uint64_t, int>> memo(static_cast<std::size_t>(n));

    auto solve = [&](auto&& self, int v, const std::vector<int>& residual) -> int {
        if (std::all_of(residual.begin(), residual.end(), [](int x) { return x == 0; })) return 0;
        if (v == n) return kInfeasible;
        auto& cache = memo[static_cast<std::size_t>(v)];
        const auto key = encode(residual);
        if (auto it = cache.find(key); it != cache.end()) return it->second;

        int best = self(self, v + 1, residual);
        std::vector<int> lifted = residual;
        const auto& passes = above[static_cast<std::size_t>(v)];
        for (std::size_t k = 0; k < passes.size(); ++k) {
            auto& r = lifted[static_cast<std::size_t>(passes[k])];
            if (r > 0) --r;
            const int cost = static_cast<int>(k) + 1;
            if (cost >= best) break;
            best = std::min(best, cost + self(self, v + 1, lifted));
        }
        cache.emplace(key, best);
        return best;
    };
    const int score = solve(solve, 0, need);
    if (score >= kInfeasible) throw InvariantViolation("dodgson: no lift plan reaches a Condorcet win");
    return score;
}

}  // namespace spdiff
