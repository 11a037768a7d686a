#pragma once

#include <optional>
#include <vector>

#include "diracflow/graph.hpp"

namespace diracflow {

/// The clique complex of a graph: for each dimension p, the ordered list of
/// p-simplices ((p+1)-cliques) as strictly ascending vertex tuples, sorted
/// lexicographically. Simplices carry a global index 0..total_dim()-1 obtained
/// by concatenating the dimensions.
class SimplicialComplex {
 public:
  using Simplex = std::vector<int>;

  SimplicialComplex() = default;
  explicit SimplicialComplex(std::vector<std::vector<Simplex>> by_dim);

  /// Number of nonempty dimensions (0 for the empty complex).
  int dimensions() const { return static_cast<int>(by_dim_.size()); }
  const std::vector<Simplex>& simplices(int p) const;
  const std::vector<int>& f_vector() const { return f_vector_; }
  int total_dim() const { return total_; }

  /// Global index of the first p-simplex.
  int offset(int p) const;
  int global_index(int p, int position) const { return offset(p) + position; }

  /// Position of a simplex within its dimension, or -1 when absent.
  int index_of(int p, const Simplex& s) const;

 private:
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<int> f_vector_;
  std::vector<int> offsets_;
  int total_ = 0;
};

/// All cliques of g with at most max_dim+1 vertices (all cliques when absent),
/// enumerated by incremental extension in ascending vertex order. Closed under
/// faces, deterministic. Beware: the full complex of a dense graph can be
/// exponentially large.
SimplicialComplex build_clique_complex(const Graph& g,
                                       std::optional<int> max_dim = {});

int alternating_sum(const std::vector<int>& counts);

/// chi = sum_p (-1)^p v_p.
int euler_characteristic(const SimplicialComplex& c);

/// Coefficient p is the number of p-simplices; evaluating at -1 gives chi.
std::vector<int> clique_polynomial(const SimplicialComplex& c);

}  // namespace diracflow
