#include "diracflow/operators.hpp"

#include <stdexcept>

namespace diracflow {

GradedMatrix exterior_derivative(const SimplicialComplex& c) {
  Grading g(c.f_vector());
  GradedMatrix d = GradedMatrix::zero(g);
  for (int p = 1; p < c.dimensions(); ++p) {
    const auto& simplices = c.simplices(p);
    for (int row = 0; row < static_cast<int>(simplices.size()); ++row) {
      const auto& x = simplices[row];
      SimplicialComplex::Simplex face(x.begin() + 1, x.end());
      double sign = 1.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        int col = c.index_of(p - 1, face);
        if (col < 0)
          throw std::logic_error("complex is not closed under faces");
        d.block(p, p - 1)(row, col) += sign;
        sign = -sign;
        if (i + 1 < x.size()) face[i] = x[i];  // drop vertex i+1 next
      }
    }
  }
  return d;
}

GradedMatrix dirac(const GradedMatrix& d) {
  if (d.off_support_residual({+1}) != 0.0)
    throw std::invalid_argument("dirac: d has content outside degree +1 blocks");
  return {d.grading(), d.matrix() + d.matrix().adjoint()};
}

GradedMatrix laplacian(const GradedMatrix& D) {
  if (D.hermiticity_residual() > 1e-8)
    throw std::invalid_argument("laplacian: input not Hermitian");
  return {D.grading(), D.matrix() * D.matrix()};
}

GradedMatrix parity(const Grading& g) {
  GradedMatrix P = GradedMatrix::zero(g);
  for (int p = 0; p < g.degrees(); ++p) {
    P.block(p, p).setIdentity();
    if (p % 2 == 1) P.block(p, p) *= -1.0;
  }
  return P;
}

GradedMatrix parity(const SimplicialComplex& c) {
  return parity(Grading(c.f_vector()));
}

Complex supertrace(const GradedMatrix& P, const GradedMatrix& A) {
  if (P.dim() != A.dim())
    throw std::invalid_argument("supertrace: dimension mismatch");
  // tr(P A) without forming the product.
  return P.matrix().cwiseProduct(A.matrix().transpose()).sum();
}

BlockExtraction extract_blocks(const GradedMatrix& D, double beta) {
  if (D.hermiticity_residual() > 1e-8)
    throw std::invalid_argument("extract_blocks: input not Hermitian");
  const Grading& g = D.grading();
  GradedMatrix d = GradedMatrix::zero(g);
  GradedMatrix b = GradedMatrix::zero(g);
  double residual = 0.0;
  for (int q = 0; q < g.degrees(); ++q)
    for (int p = 0; p < g.degrees(); ++p) {
      if (g.size(q) == 0 || g.size(p) == 0) continue;
      if (q == p + 1)
        d.block(q, p) = D.block(q, p);
      else if (q == p)
        b.block(q, p) = D.block(q, p);
      else if (q != p - 1)
        residual = std::max(residual, D.block(q, p).cwiseAbs().maxCoeff());
    }
  return {DiracDecomposition{std::move(d), std::move(b), beta}, residual};
}

GradedMatrix b_operator(const DiracDecomposition& dec) {
  const Matrix& d = dec.d_part.matrix();
  return {dec.d_part.grading(),
          d - d.adjoint() + Complex(0.0, dec.beta) * dec.b_part.matrix()};
}

GradedMatrix assemble_dirac(const DiracDecomposition& dec) {
  const Matrix& d = dec.d_part.matrix();
  return {dec.d_part.grading(), d + d.adjoint() + dec.b_part.matrix()};
}

GradedMatrix assemble_c(const DiracDecomposition& dec) {
  const Matrix& d = dec.d_part.matrix();
  return {dec.d_part.grading(), d + d.adjoint()};
}

}  // namespace diracflow
