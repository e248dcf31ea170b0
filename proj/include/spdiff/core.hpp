#pragma once
// Candidates, rankings, single-peaked axes, profiles and pairwise-majority
// statistics.
//
// Candidates are plain indices 0..m-1. Every candidate set is named by an
// Axis; for the canonical axis the index of a candidate equals its axis
// position, which is how files and generators construct them.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace spdiff {

using Candidate = int;

/// Largest candidate count for which all 2^(m-1) single-peaked rankings are
/// materialised.
inline constexpr int kMaxEnumerationCandidates = 20;

/// A strict total order over candidates 0..m-1, most preferred first.
class Ranking {
public:
    Ranking() = default;
    /// Throws DomainError unless `order` is a permutation of 0..m-1.
    explicit Ranking(std::vector<Candidate> order);

    static Ranking identity(int m);

    int size() const noexcept { return static_cast<int>(order_.size()); }
    Candidate at(int rank) const { return order_[static_cast<std::size_t>(rank)]; }
    int position(Candidate c) const { return pos_[static_cast<std::size_t>(c)]; }
    Candidate peak() const { return order_.front(); }
    Candidate last() const { return order_.back(); }
    bool prefers(Candidate a, Candidate b) const { return position(a) < position(b); }

    std::span<const Candidate> order() const noexcept { return order_; }
    std::span<const int> positions() const noexcept { return pos_; }

    Ranking reversed() const;

    friend bool operator==(const Ranking& a, const Ranking& b) { return a.order_ == b.order_; }
    friend std::strong_ordering operator<=>(const Ranking& a, const Ranking& b) {
        return a.order_ <=> b.order_;
    }

private:
    std::vector<Candidate> order_;
    std::vector<int> pos_;
};

/// The single-peaked axis c_1 |> ... |> c_m together with candidate names.
class Axis {
public:
    Axis() = default;
    /// Canonical axis: candidate i sits at position i and is called names[i].
    explicit Axis(std::vector<std::string> names);
    /// Axis over `names` whose position p holds candidate order[p].
    Axis(std::vector<std::string> names, std::vector<Candidate> order);

    /// Canonical axis named a, b, c, ... (c1, c2, ... once m exceeds 26).
    static Axis canonical(int m);

    int size() const noexcept { return static_cast<int>(names_.size()); }
    Candidate at(int pos) const { return order_[static_cast<std::size_t>(pos)]; }
    int position(Candidate c) const { return pos_[static_cast<std::size_t>(c)]; }
    const std::string& name(Candidate c) const { return names_[static_cast<std::size_t>(c)]; }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<Candidate> find(std::string_view name) const;

    /// Same candidate set, opposite direction.
    Axis reversed() const;
    /// r-up: c_1 > c_2 > ... > c_m.
    Ranking ascending() const;
    /// r-down: c_m > ... > c_1.
    Ranking descending() const;
    /// |i - j| for c_i, c_j.
    int distance(Candidate a, Candidate b) const;

    friend bool operator==(const Axis& a, const Axis& b) {
        return a.names_ == b.names_ && a.order_ == b.order_;
    }

private:
    std::vector<std::string> names_;
    std::vector<Candidate> order_;
    std::vector<int> pos_;
};

/// Voters' rankings over a shared candidate set; voter v is index v.
class Profile {
public:
    explicit Profile(int num_candidates = 0) : m_(num_candidates) {}
    Profile(int num_candidates, std::vector<Ranking> voters);

    int num_candidates() const noexcept { return m_; }
    int size() const noexcept { return static_cast<int>(voters_.size()); }
    bool empty() const noexcept { return voters_.empty(); }

    const Ranking& operator[](int v) const { return voters_[static_cast<std::size_t>(v)]; }
    std::span<const Ranking> voters() const noexcept { return voters_; }

    void add(const Ranking& r, int count = 1);
    /// Number of voters holding exactly `r`.
    int count(const Ranking& r) const;

    /// Voter-major n x m matrix of candidate positions (row v = voter v).
    std::vector<std::int32_t> position_matrix() const;

    friend bool operator==(const Profile&, const Profile&) = default;

private:
    int m_;
    std::vector<Ranking> voters_;
};

/// Antisymmetric popularity margins pop(a, b) = #{a > b} - #{b > a}.
class MajorityTable {
public:
    MajorityTable(int num_candidates, int num_voters, std::vector<int> margins);

    int num_candidates() const noexcept { return m_; }
    int num_voters() const noexcept { return n_; }
    int margin(Candidate a, Candidate b) const {
        return pop_[static_cast<std::size_t>(a * m_ + b)];
    }
    /// Voters ranking a above b.
    int support(Candidate a, Candidate b) const { return (n_ + margin(a, b)) / 2; }

private:
    int m_;
    int n_;
    std::vector<int> pop_;
};

/// Weak winners/losers plus the strict one when it exists.
struct CondorcetSet {
    std::vector<Candidate> weak;
    std::optional<Candidate> strict;
};

/// The 2^(m-1) single-peaked rankings in the threshold ordering, plus for each
/// adjacent axis pair (c_i, c_{i+1}) the count h of leading rankings that put
/// c_i above c_{i+1}.
struct SPRankingSequence {
    std::vector<Ranking> rankings;
    std::vector<std::size_t> thresholds;
};

/// Number of candidate pairs ordered oppositely. DomainError on size mismatch.
int kendall_tau(const Ranking& a, const Ranking& b);

bool is_single_peaked(const Ranking& r, const Axis& axis);
bool is_single_peaked(const Profile& p, const Axis& axis);

/// Throws CapacityError when m exceeds kMaxEnumerationCandidates.
SPRankingSequence enumerate_sp_rankings(const Axis& axis);

MajorityTable majority_table(const Profile& p);

CondorcetSet condorcet_winners(const MajorityTable& t);
CondorcetSet condorcet_winners(const Profile& p);
CondorcetSet condorcet_losers(const MajorityTable& t);
CondorcetSet condorcet_losers(const Profile& p);

/// Candidates between the lower and upper median peak (inclusive) along the
/// axis. DomainError if `p` is not single-peaked w.r.t. `axis`.
std::vector<Candidate> median_peak_winners(const Profile& p, const Axis& axis);

/// m choose 2.
constexpr int pair_count(int m) { return m * (m - 1) / 2; }

}  // namespace spdiff

template <>
struct std::hash<spdiff::Ranking> {
    std::size_t operator()(const spdiff::Ranking& r) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto c : r.order()) {
            h ^= static_cast<std::size_t>(c) + 1;
            h *= 1099511628211ull;
        }
        return h;
    }
};
