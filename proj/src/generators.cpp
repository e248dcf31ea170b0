#include "spdiff/generators.hpp"

#include <array>
#include <random>

#include "spdiff/error.hpp"

namespace spdiff {

namespace {

constexpr std::array kFamilies{GraphFamily::Path, GraphFamily::Cycle, GraphFamily::Star, GraphFamily::Complete,
                               GraphFamily::Gnp};

// Opinions are drawn from a seed distinct from the graph seed.
constexpr std::uint64_t kOpinionStream = 0x9e3779b97f4a7c15ull;

}  // namespace

std::string_view graph_family_name(GraphFamily f) {
    switch (f) {
    case GraphFamily::Path: return "path";
    case GraphFamily::Cycle: return "cycle";
    case GraphFamily::Star: return "star";
    case GraphFamily::Complete: return "complete";
    case GraphFamily::Gnp: return "gnp";
    }
    return "?";
}

std::optional<GraphFamily> parse_graph_family(std::string_view name) {
    for (auto f : kFamilies) {
        if (graph_family_name(f) == name) return f;
    }
    return std::nullopt;
}

Graph make_graph(GraphFamily family, int n, double p, std::uint64_t seed) {
    if (n < 0) throw DomainError("graph size must be non-negative");
    if (family == GraphFamily::Gnp && !(p >= 0.0 && p <= 1.0)) throw DomainError("gnp probability must lie in [0, 1]");
    Graph g(n);
    switch (family) {
    case GraphFamily::Path:
        for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
        break;
    case GraphFamily::Cycle:
        for (int v = 0; v + 1 < n; ++v) g.add_edge(v, v + 1);
        if (n > 2) g.add_edge(n - 1, 0);
        break;
    case GraphFamily::Star:
        for (int v = 1; v < n; ++v) g.add_edge(0, v);
        break;
    case GraphFamily::Complete:
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) g.add_edge(u, v);
        }
        break;
    case GraphFamily::Gnp: {
        std::mt19937_64 rng(seed);
        std::bernoulli_distribution coin(p);
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (coin(rng)) g.add_edge(u, v);
            }
        }
        break;
    }
    }
    return g;
}

Profile generate_sp_profile(const Axis& axis, int n, std::uint64_t seed) {
    if (n < 0) throw DomainError("voter count must be non-negative");
    const auto sequence = enumerate_sp_rankings(axis).rankings;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sequence.size() - 1);
    Profile p(axis.size());
    for (int v = 0; v < n; ++v) p.add(sequence[pick(rng)]);
    return p;
}

Profile generate_sp_profile(int m, int n, std::uint64_t seed) {
    if (m < 1) throw DomainError("need at least one candidate");
    if (m > kMaxEnumerationCandidates) {
        throw CapacityError("generate_sp_profile supports m <= " + std::to_string(kMaxEnumerationCandidates));
    }
    return generate_sp_profile(Axis::canonical(m), n, seed);
}

PreferenceNetwork generate_sp_network(GraphFamily family, int n, int m, double p, std::uint64_t seed) {
    Graph g = make_graph(family, n, p, seed);
    const Profile opinions = generate_sp_profile(m, n, seed ^ kOpinionStream);
    return PreferenceNetwork(Axis::canonical(m), std::move(g),
                             std::vector<Ranking>(opinions.voters().begin(), opinions.voters().end()));
}

}  // namespace spdiff
