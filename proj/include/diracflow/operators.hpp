#pragma once

#include "diracflow/clique_complex.hpp"
#include "diracflow/graded_matrix.hpp"

namespace diracflow {

/// Signed incidence operator d: entry between a (p+1)-simplex x and the face
/// obtained by dropping its i-th vertex (ascending order) is (-1)^i. Raises
/// degree by one; d*d = 0 exactly.
GradedMatrix exterior_derivative(const SimplicialComplex& c);

/// D = d + d^*. Throws std::invalid_argument when d has entries outside the
/// degree +1 blocks.
GradedMatrix dirac(const GradedMatrix& d);

/// L = D^2, block diagonal for a pure Dirac operator.
GradedMatrix laplacian(const GradedMatrix& D);

/// Diagonal (-1)^p on p-form slots.
GradedMatrix parity(const Grading& g);
GradedMatrix parity(const SimplicialComplex& c);

/// tr(P A). Throws on dimension mismatch.
Complex supertrace(const GradedMatrix& P, const GradedMatrix& A);

/// The triple the deformation evolves: d on the degree +1 blocks, Hermitian b
/// on the diagonal blocks, and the parameter of the complex variant.
struct DiracDecomposition {
  GradedMatrix d_part;
  GradedMatrix b_part;
  double beta = 0.0;
};

struct BlockExtraction {
  DiracDecomposition decomposition;
  /// max |entry| of D outside degree shifts {-1, 0, +1}; nonzero values signal
  /// structure breakdown.
  double residual = 0.0;
};

/// Splits a Hermitian D into its degree +1 part and diagonal part.
/// Throws std::invalid_argument when D is not Hermitian within 1e-8.
BlockExtraction extract_blocks(const GradedMatrix& D, double beta = 0.0);

/// B = d - d^* + i beta b; anti-Hermitian.
GradedMatrix b_operator(const DiracDecomposition& dec);

/// D = d + d^* + b.
GradedMatrix assemble_dirac(const DiracDecomposition& dec);

/// C = d + d^*, the Dirac operator of the deformed exterior derivative alone.
GradedMatrix assemble_c(const DiracDecomposition& dec);

}  // namespace diracflow
