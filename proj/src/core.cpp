#include "spdiff/core.hpp"

#include <algorithm>
#include <numeric>

#include "spdiff/error.hpp"
#include "spdiff/kernels.hpp"

namespace spdiff {

namespace {

std::vector<int> invert(std::span<const Candidate> order, const char* what) {
    std::vector<int> pos(order.size(), -1);
    for (std::size_t i = 0; i < order.size(); ++i) {
        const Candidate c = order[i];
        if (c < 0 || static_cast<std::size_t>(c) >= order.size() || pos[static_cast<std::size_t>(c)] != -1) {
            throw DomainError(std::string(what) + ": not a permutation of the candidate set");
        }
        pos[static_cast<std::size_t>(c)] = static_cast<int>(i);
    }
    return pos;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ranking

Ranking::Ranking(std::vector<Candidate> order) : order_(std::move(order)) {
    pos_ = invert(order_, "ranking");
}

Ranking Ranking::identity(int m) {
    std::vector<Candidate> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    return Ranking(std::move(order));
}

Ranking Ranking::reversed() const {
    return Ranking(std::vector<Candidate>(order_.rbegin(), order_.rend()));
}

// ---------------------------------------------------------------------------
// Axis

Axis::Axis(std::vector<std::string> names) : names_(std::move(names)) {
    order_.resize(names_.size());
    std::iota(order_.begin(), order_.end(), 0);
    pos_ = order_;
    std::vector<std::string> sorted = names_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw DomainError("axis: duplicate candidate name");
    }
    if (names_.empty()) throw DomainError("axis: needs at least one candidate");
}

Axis::Axis(std::vector<std::string> names, std::vector<Candidate> order)
    : Axis(std::move(names)) {
    if (order.size() != names_.size()) throw DomainError("axis: order does not cover the candidate set");
    pos_ = invert(order, "axis");
    order_ = std::move(order);
}

Axis Axis::canonical(int m) {
    if (m < 1) throw DomainError("axis: needs at least one candidate");
    std::vector<std::string> names;
    names.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        names.push_back(m <= 26 ? std::string(1, static_cast<char>('a' + i)) : "c" + std::to_string(i + 1));
    }
    return Axis(std::move(names));
}

std::optional<Candidate> Axis::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<Candidate>(i);
    }
    return std::nullopt;
}

Axis Axis::reversed() const {
    return Axis(names_, std::vector<Candidate>(order_.rbegin(), order_.rend()));
}

Ranking Axis::ascending() const { return Ranking(order_); }

Ranking Axis::descending() const {
    return Ranking(std::vector<Candidate>(order_.rbegin(), order_.rend()));
}

int Axis::distance(Candidate a, Candidate b) const { return std::abs(position(a) - position(b)); }

// ---------------------------------------------------------------------------
// Profile

Profile::Profile(int num_candidates, std::vector<Ranking> voters) : m_(num_candidates) {
    for (auto& r : voters) add(r);
}

void Profile::add(const Ranking& r, int count) {
    if (r.size() != m_) throw DomainError("profile: ranking is over a different candidate set");
    if (count <= 0) return;
    voters_.insert(voters_.end(), static_cast<std::size_t>(count), Ranking(r));
}

int Profile::count(const Ranking& r) const {
    return static_cast<int>(std::count(voters_.begin(), voters_.end(), r));
}

std::vector<std::int32_t> Profile::position_matrix() const {
    std::vector<std::int32_t> out;
    out.reserve(voters_.size() * static_cast<std::size_t>(m_));
    for (const auto& r : voters_) out.insert(out.end(), r.positions().begin(), r.positions().end());
    return out;
}

// ---------------------------------------------------------------------------
// Majority statistics

MajorityTable::MajorityTable(int num_candidates, int num_voters, std::vector<int> margins)
    : m_(num_candidates), n_(num_voters), pop_(std::move(margins)) {}

MajorityTable majority_table(const Profile& p) {
    const int m = p.num_candidates();
    const int n = p.size();
    std::vector<std::int32_t> wins(static_cast<std::size_t>(m) * m, 0);
    const auto positions = p.position_matrix();
    kernels::count_pairwise_wins(positions, n, m, wins);
    std::vector<int> pop(wins.size());
    for (int a = 0; a < m; ++a) {
        for (int b = 0; b < m; ++b) {
            pop[static_cast<std::size_t>(a * m + b)] =
                wins[static_cast<std::size_t>(a * m + b)] - wins[static_cast<std::size_t>(b * m + a)];
        }
    }
    return MajorityTable(m, n, std::move(pop));
}

namespace {

// sign = +1 for winners (nobody beats c), -1 for losers (c beats nobody).
CondorcetSet condorcet_extremes(const MajorityTable& t, int sign) {
    CondorcetSet out;
    const int m = t.num_candidates();
    for (Candidate c = 0; c < m; ++c) {
        bool weak = true;
        bool strict = true;
        for (Candidate d = 0; d < m; ++d) {
            if (d == c) continue;
            const int against = sign * t.margin(d, c);  // > 0: c is worse off than d
            if (against > 0) weak = false;
            if (against >= 0) strict = false;
        }
        if (weak) out.weak.push_back(c);
        if (strict) out.strict = c;
    }
    return out;
}

}  // namespace

CondorcetSet condorcet_winners(const MajorityTable& t) { return condorcet_extremes(t, +1); }
CondorcetSet condorcet_winners(const Profile& p) { return condorcet_winners(majority_table(p)); }
CondorcetSet condorcet_losers(const MajorityTable& t) { return condorcet_extremes(t, -1); }
CondorcetSet condorcet_losers(const Profile& p) { return condorcet_losers(majority_table(p)); }

// ---------------------------------------------------------------------------
// Single-peakedness

int kendall_tau(const Ranking& a, const Ranking& b) {
    if (a.size() != b.size()) throw DomainError("kendall_tau: rankings over different candidate sets");
    const int m = a.size();
    int d = 0;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            const Candidate x = a.at(i);
            const Candidate y = a.at(j);
            if (b.prefers(y, x)) ++d;
        }
    }
    return d;
}

bool is_single_peaked(const Ranking& r, const Axis& axis) {
    if (r.size() != axis.size()) throw DomainError("is_single_peaked: ranking and axis differ in size");
    // Every top-k prefix must occupy a contiguous stretch of the axis.
    int lo = axis.position(r.peak());
    int hi = lo;
    for (int k = 1; k < r.size(); ++k) {
        const int p = axis.position(r.at(k));
        if (p == lo - 1) {
            lo = p;
        } else if (p == hi + 1) {
            hi = p;
        } else {
            return false;
        }
    }
    return true;
}

bool is_single_peaked(const Profile& p, const Axis& axis) {
    return std::all_of(p.voters().begin(), p.voters().end(),
                       [&](const Ranking& r) { return is_single_peaked(r, axis); });
}

SPRankingSequence enumerate_sp_rankings(const Axis& axis) {
    const int m = axis.size();
    if (m > kMaxEnumerationCandidates) {
        throw CapacityError("enumerate_sp_rankings: m = " + std::to_string(m) + " exceeds " +
                            std::to_string(kMaxEnumerationCandidates));
    }
    // Built over axis positions, mapped to candidates at the end. Each step
    // adds position k below position k-1 in every possible slot, lowest slot
    // first, then appends the full reversal.
    std::vector<std::vector<Candidate>> seq{{0}};
    for (int k = 1; k < m; ++k) {
        std::vector<std::vector<Candidate>> next;
        next.reserve(std::size_t{1} << k);
        for (const auto& r : seq) {
            const auto above = std::find(r.begin(), r.end(), k - 1);
            const auto first_slot = static_cast<std::size_t>(above - r.begin()) + 1;
            for (std::size_t slot = r.size(); slot >= first_slot; --slot) {
                auto extended = r;
                extended.insert(extended.begin() + static_cast<std::ptrdiff_t>(slot), k);
                next.push_back(std::move(extended));
            }
        }
        std::vector<Candidate> top_down(static_cast<std::size_t>(k) + 1);
        std::iota(top_down.rbegin(), top_down.rend(), 0);
        next.push_back(std::move(top_down));
        seq = std::move(next);
    }

    SPRankingSequence out;
    out.rankings.reserve(seq.size());
    for (auto& r : seq) {
        for (auto& c : r) c = axis.at(c);
        out.rankings.emplace_back(std::move(r));
    }
    for (int i = 0; i + 1 < m; ++i) {
        const Candidate left = axis.at(i);
        const Candidate right = axis.at(i + 1);
        std::size_t h = 0;
        while (h < out.rankings.size() && out.rankings[h].prefers(left, right)) ++h;
        out.thresholds.push_back(h);
    }
    return out;
}

std::vector<Candidate> median_peak_winners(const Profile& p, const Axis& axis) {
    if (p.num_candidates() != axis.size()) throw DomainError("median_peak_winners: axis mismatch");
    if (!is_single_peaked(p, axis)) {
        throw DomainError("median_peak_winners: profile is not single-peaked w.r.t. the axis");
    }
    std::vector<Candidate> out;
    if (p.empty()) {
        for (int pos = 0; pos < axis.size(); ++pos) out.push_back(axis.at(pos));
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<int> peaks;
    for (const auto& r : p.voters()) peaks.push_back(axis.position(r.peak()));
    std::sort(peaks.begin(), peaks.end());
    const std::size_t n = peaks.size();
    const int lower = peaks[(n - 1) / 2];
    const int upper = peaks[n / 2];
    for (int pos = lower; pos <= upper; ++pos) out.push_back(axis.at(pos));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace spdiff
