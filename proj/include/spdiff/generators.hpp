#pragma once
// Seeded generators for graphs, profiles and networks. The same arguments
// always give the same output.

#include <cstdint>
#include <optional>
#include <string_view>

#include "spdiff/core.hpp"
#include "spdiff/diffusion.hpp"

namespace spdiff {

enum class GraphFamily { Path, Cycle, Star, Complete, Gnp };

std::string_view graph_family_name(GraphFamily f);
std::optional<GraphFamily> parse_graph_family(std::string_view name);

/// `p` and `seed` are used only by Gnp. Star is centred on vertex 0.
Graph make_graph(GraphFamily family, int n, double p = 0.5, std::uint64_t seed = 0);

/// n rankings drawn uniformly from the single-peaked rankings of `axis`.
Profile generate_sp_profile(const Axis& axis, int n, std::uint64_t seed);
/// Same, over the canonical axis with m candidates.
Profile generate_sp_profile(int m, int n, std::uint64_t seed);

/// Graph of the family on n voters with uniform single-peaked opinions over
/// the canonical m-candidate axis.
PreferenceNetwork generate_sp_network(GraphFamily family, int n, int m, double p, std::uint64_t seed);

}  // namespace spdiff
