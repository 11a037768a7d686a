#pragma once

#include <optional>
#include <vector>

#include "diracflow/graded_matrix.hpp"

namespace diracflow {

struct Spectrum {
  RealVector eigenvalues;            // ascending
  std::optional<Matrix> eigenvectors;  // orthonormal columns when requested
};

/// Dense Hermitian eigensolve with a residual check ||Av - lambda v|| <
/// 1e-9 ||A||. Throws std::invalid_argument when ||A - A^*||_max >= 1e-8.
Spectrum eigen_hermitian(const GradedMatrix& A, bool with_vectors = true);
Spectrum eigen_hermitian(const Matrix& A, bool with_vectors = true);

struct ZetaValue {
  Complex s;
  Complex value;
};

/// zeta(s) = (1 + e^{i pi s}) sum_{lambda > 0} lambda^{-s} over a symmetric
/// Dirac spectrum; the branch factor stands in for the negative eigenvalues.
/// Eigenvalues below 1e-10 * max|lambda| count as zero and are skipped.
ZetaValue dirac_zeta(const Spectrum& spec, Complex s);

std::vector<ZetaValue> zeta_table(const Spectrum& spec,
                                  const std::vector<Complex>& points);

struct PseudoDeterminant {
  double signed_product;  // product of nonzero eigenvalues
  Complex zeta_based;     // exp(-zeta'(0)) from the branch formula
};

/// Both conventions side by side; the empty product is 1.
PseudoDeterminant pseudo_determinant(const Spectrum& spec);

/// str(exp(-L t)) = tr(P exp(-L t)) via eigendecomposition of L.
double mckean_singer_heat(const GradedMatrix& L, const GradedMatrix& P,
                          double t);

/// |<f, D f>| / (||f|| ||D f||) for a vector supported on even-degree slots.
/// Returns nullopt when D f vanishes (harmonic f, no superpartner). Throws
/// std::invalid_argument when f is zero or has odd-degree support.
std::optional<double> superpartner_cosine(const ComplexVector& f,
                                          const GradedMatrix& D_t);

}  // namespace diracflow
