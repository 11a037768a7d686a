#include "diracflow/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace diracflow {

namespace {
constexpr double kZeroEigenvalueRel = 1e-10;
}

Spectrum eigen_hermitian(const Matrix& A, bool with_vectors) {
  if (A.rows() != A.cols())
    throw std::invalid_argument("eigen_hermitian: matrix not square");
  if (A.rows() == 0) return {RealVector(0), std::nullopt};
  if (max_abs(Matrix(A - A.adjoint())) > 1e-8)
    throw std::invalid_argument("eigen_hermitian: input not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      A, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigen_hermitian: eigensolver failed");
  Spectrum spec;
  spec.eigenvalues = es.eigenvalues();
  if (with_vectors) {
    spec.eigenvectors = es.eigenvectors();
    const double scale = std::max(1.0, max_abs(A));
    const Matrix residual =
        A * *spec.eigenvectors -
        *spec.eigenvectors * spec.eigenvalues.asDiagonal();
    for (int i = 0; i < residual.cols(); ++i)
      if (residual.col(i).norm() > 1e-9 * scale)
        throw std::runtime_error("eigen_hermitian: residual check failed");
  }
  return spec;
}

Spectrum eigen_hermitian(const GradedMatrix& A, bool with_vectors) {
  return eigen_hermitian(A.matrix(), with_vectors);
}

ZetaValue dirac_zeta(const Spectrum& spec, Complex s) {
  const auto& ev = spec.eigenvalues;
  if (ev.size() == 0) return {s, {0.0, 0.0}};
  const double zero_tol = kZeroEigenvalueRel * ev.cwiseAbs().maxCoeff();
  Complex positive_sum{0.0, 0.0};
  for (int i = 0; i < ev.size(); ++i)
    if (ev[i] > zero_tol)
      positive_sum += std::exp(-s * std::log(ev[i]));
  const Complex branch =
      1.0 + std::exp(Complex(0.0, 1.0) * Complex(M_PI, 0.0) * s);
  return {s, branch * positive_sum};
}

std::vector<ZetaValue> zeta_table(const Spectrum& spec,
                                  const std::vector<Complex>& points) {
  std::vector<ZetaValue> table;
  table.reserve(points.size());
  for (Complex s : points) table.push_back(dirac_zeta(spec, s));
  return table;
}

PseudoDeterminant pseudo_determinant(const Spectrum& spec) {
  const auto& ev = spec.eigenvalues;
  PseudoDeterminant out{1.0, {1.0, 0.0}};
  if (ev.size() == 0) return out;
  const double zero_tol = kZeroEigenvalueRel * ev.cwiseAbs().maxCoeff();
  double product = 1.0;
  double log_sum = 0.0;
  int positive_count = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i]) <= zero_tol) continue;
    product *= ev[i];
    if (ev[i] > 0.0) {
      log_sum += std::log(ev[i]);
      ++positive_count;
    }
  }
  out.signed_product = product;
  // zeta'(0) = i pi N+ - 2 sum_{lambda>0} log lambda under the branch
  // (1 + e^{i pi s}) sum lambda^{-s}.
  const Complex zeta_prime_0 =
      Complex(0.0, M_PI * positive_count) - Complex(2.0 * log_sum, 0.0);
  out.zeta_based = std::exp(-zeta_prime_0);
  return out;
}

double mckean_singer_heat(const GradedMatrix& L, const GradedMatrix& P,
                          double t) {
  if (t < 0.0) throw std::invalid_argument("mckean_singer_heat: t < 0");
  if (L.dim() == 0) return 0.0;
  Spectrum spec = eigen_hermitian(L, true);
  const Matrix& V = *spec.eigenvectors;
  RealVector weights = (-t * spec.eigenvalues.array()).exp().matrix();
  const Matrix heat = V * weights.asDiagonal() * V.adjoint();
  Complex str = P.matrix().cwiseProduct(heat.transpose()).sum();
  return str.real();
}

std::optional<double> superpartner_cosine(const ComplexVector& f,
                                          const GradedMatrix& D_t) {
  const Grading& g = D_t.grading();
  if (f.size() != g.total())
    throw std::invalid_argument("superpartner_cosine: dimension mismatch");
  const double f_norm = f.norm();
  if (f_norm == 0.0)
    throw std::invalid_argument("superpartner_cosine: zero vector");
  double odd_mass = 0.0;
  for (int p = 1; p < g.degrees(); p += 2)
    odd_mass += f.segment(g.start(p), g.size(p)).squaredNorm();
  if (odd_mass > 1e-20 * f_norm * f_norm)
    throw std::invalid_argument(
        "superpartner_cosine: vector has odd-degree support");
  const ComplexVector Df = D_t.matrix() * f;
  const double Df_norm = Df.norm();
  if (Df_norm <= 1e-12 * std::max(1.0, max_abs(D_t.matrix())) * f_norm)
    return std::nullopt;  // harmonic: no superpartner
  return std::abs(f.dot(Df)) / (f_norm * Df_norm);
}

}  // namespace diracflow
