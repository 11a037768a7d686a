#include "diracflow/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace diracflow {

bool Graph::adjacent(int u, int v) const {
  if (u == v) return false;
  if (u > v) std::swap(u, v);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
}

Graph make_graph(int vertex_count, std::vector<std::pair<int, int>> edges) {
  if (vertex_count < 0)
    throw std::invalid_argument("graph: negative vertex count");
  for (auto& [u, v] : edges) {
    if (u == v)
      throw std::invalid_argument("graph: self-loop at vertex " +
                                  std::to_string(u));
    if (u > v) std::swap(u, v);
    if (u < 0 || v >= vertex_count)
      throw std::invalid_argument("graph: edge endpoint out of range");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph{vertex_count, std::move(edges)};
}

std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double splitmix64_unit(std::uint64_t& state) {
  return static_cast<double>(splitmix64_next(state) >> 11) * 0x1.0p-53;
}

Graph generate_erdos_renyi(int n, double edge_prob, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("generate_erdos_renyi: n < 0");
  if (edge_prob < 0.0 || edge_prob > 1.0)
    throw std::invalid_argument("generate_erdos_renyi: p outside [0,1]");
  std::uint64_t state = seed;
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (splitmix64_unit(state) < edge_prob) edges.emplace_back(u, v);
  return Graph{n, std::move(edges)};
}

Graph parse_edge_list(std::istream& in) {
  std::vector<std::pair<int, int>> edges;
  int max_vertex = -1;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    if (!(ls >> v))
      throw std::invalid_argument("edge list: missing endpoint on line " +
                                  std::to_string(line_no));
    std::string trailing;
    if (ls >> trailing)
      throw std::invalid_argument("edge list: trailing tokens on line " +
                                  std::to_string(line_no));
    if (u < 0 || v < 0)
      throw std::invalid_argument("edge list: negative vertex on line " +
                                  std::to_string(line_no));
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    max_vertex = std::max(max_vertex, static_cast<int>(std::max(u, v)));
  }
  return make_graph(max_vertex + 1, std::move(edges));
}

Graph parse_graph_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("graph json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw std::invalid_argument("graph json: expected {\"n\":..,\"edges\":[..]}");
  int n = j.at("n").get<int>();
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("graph json: edge must be a pair");
    edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  }
  return make_graph(n, std::move(edges));
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open graph file: " + path);
  int c = in.peek();
  while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
    in.get();
    c = in.peek();
  }
  if (c == '{') return parse_graph_json(in);
  return parse_edge_list(in);
}

std::string graph_to_json(const Graph& g) {
  nlohmann::ordered_json j;
  j["n"] = g.vertex_count;
  auto edges = nlohmann::json::array();
  for (const auto& [u, v] : g.edges) edges.push_back({u, v});
  j["edges"] = edges;
  return j.dump();
}

}  // namespace diracflow
