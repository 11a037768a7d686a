#include "diracflow/clique_complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace diracflow {

SimplicialComplex::SimplicialComplex(std::vector<std::vector<Simplex>> by_dim)
    : by_dim_(std::move(by_dim)) {
  while (!by_dim_.empty() && by_dim_.back().empty()) by_dim_.pop_back();
  offsets_.push_back(0);
  for (const auto& dim : by_dim_) {
    f_vector_.push_back(static_cast<int>(dim.size()));
    offsets_.push_back(offsets_.back() + f_vector_.back());
  }
  total_ = offsets_.back();
}

const std::vector<SimplicialComplex::Simplex>& SimplicialComplex::simplices(
    int p) const {
  static const std::vector<Simplex> empty;
  if (p < 0 || p >= dimensions()) return empty;
  return by_dim_[p];
}

int SimplicialComplex::offset(int p) const {
  if (p < 0 || p >= dimensions())
    throw std::out_of_range("simplex dimension out of range");
  return offsets_[p];
}

int SimplicialComplex::index_of(int p, const Simplex& s) const {
  if (p < 0 || p >= dimensions()) return -1;
  const auto& dim = by_dim_[p];
  auto it = std::lower_bound(dim.begin(), dim.end(), s);
  if (it == dim.end() || *it != s) return -1;
  return static_cast<int>(it - dim.begin());
}

SimplicialComplex build_clique_complex(const Graph& g,
                                       std::optional<int> max_dim) {
  if (max_dim && *max_dim < 0)
    throw std::invalid_argument("build_clique_complex: max_dim < 0");
  const int n = g.vertex_count;
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (const auto& [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;

  std::vector<std::vector<SimplicialComplex::Simplex>> by_dim;
  if (n > 0) {
    by_dim.emplace_back();
    for (int v = 0; v < n; ++v) by_dim[0].push_back({v});
  }
  // Extend each clique only by larger vertices adjacent to all its members;
  // iterating cliques in stored order keeps every dimension lexicographic.
  int p = 1;
  while (!by_dim.empty() && !by_dim.back().empty() &&
         (!max_dim || p <= *max_dim)) {
    std::vector<SimplicialComplex::Simplex> next;
    for (const auto& clique : by_dim[p - 1]) {
      for (int u = clique.back() + 1; u < n; ++u) {
        bool complete = true;
        for (int w : clique)
          if (!adj[w][u]) {
            complete = false;
            break;
          }
        if (!complete) continue;
        auto extended = clique;
        extended.push_back(u);
        next.push_back(std::move(extended));
      }
    }
    if (next.empty()) break;
    by_dim.push_back(std::move(next));
    ++p;
  }
  return SimplicialComplex(std::move(by_dim));
}

int alternating_sum(const std::vector<int>& counts) {
  int sum = 0;
  int sign = 1;
  for (int c : counts) {
    sum += sign * c;
    sign = -sign;
  }
  return sum;
}

int euler_characteristic(const SimplicialComplex& c) {
  return alternating_sum(c.f_vector());
}

std::vector<int> clique_polynomial(const SimplicialComplex& c) {
  return c.f_vector();
}

}  // namespace diracflow
