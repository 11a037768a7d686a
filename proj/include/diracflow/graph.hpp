#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace diracflow {

/// Finite simple graph on vertices 0..vertex_count-1.
/// Edges are kept canonical: u < v, sorted lexicographically, no duplicates.
struct Graph {
  int vertex_count = 0;
  std::vector<std::pair<int, int>> edges;

  bool adjacent(int u, int v) const;
  std::size_t edge_count() const { return edges.size(); }
};

/// Normalizes edge endpoints (u < v), sorts, drops duplicates and validates.
/// Throws std::invalid_argument on self-loops or out-of-range endpoints.
Graph make_graph(int vertex_count, std::vector<std::pair<int, int>> edges);

/// splitmix64 step; the one fixed generator used everywhere randomness is needed.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// Uniform double in [0,1) from one splitmix64 draw (53 mantissa bits).
double splitmix64_unit(std::uint64_t& state);

/// Seeded Erdos-Renyi G(n, p): every unordered pair, visited in lexicographic
/// order, is included with probability edge_prob using one splitmix64 draw per
/// pair. Same seed, same graph, on any platform.
Graph generate_erdos_renyi(int n, double edge_prob, std::uint64_t seed);

/// Edge-list text: one "u v" pair per line, '#' starts a comment.
/// vertex_count is inferred as max endpoint + 1.
Graph parse_edge_list(std::istream& in);

/// JSON form {"n": int, "edges": [[u,v],...]}.
Graph parse_graph_json(std::istream& in);

/// Dispatches on content: JSON if the first non-space byte is '{'.
Graph load_graph_file(const std::string& path);

std::string graph_to_json(const Graph& g);

}  // namespace diracflow
