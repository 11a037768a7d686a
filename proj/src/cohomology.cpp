#include "diracflow/cohomology.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <stdexcept>

namespace diracflow {

namespace {

constexpr double kRankEps = 1e-10;    // singular-value route
constexpr double kKernelEps = 1e-12;  // eigenvalue route (sigma^2 scale)
constexpr double kAmbiguityFactor = 10.0;

struct RankResult {
  int rank = 0;
  bool ambiguous = false;
};

RankResult rank_of(const Matrix& block) {
  RankResult r;
  if (block.rows() == 0 || block.cols() == 0) return r;
  Eigen::JacobiSVD<Matrix> svd(block);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  if (smax == 0.0) return r;
  const double threshold =
      kRankEps * smax *
      static_cast<double>(std::max(block.rows(), block.cols()));
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++r.rank;
    if (sv(i) >= threshold / kAmbiguityFactor &&
        sv(i) <= threshold * kAmbiguityFactor)
      r.ambiguous = true;
  }
  return r;
}

RankResult kernel_of(const Matrix& lap_block) {
  RankResult r;
  const int n = static_cast<int>(lap_block.rows());
  if (n == 0) return r;
  Eigen::SelfAdjointEigenSolver<Matrix> es(lap_block, Eigen::EigenvaluesOnly);
  const RealVector ev = es.eigenvalues().cwiseAbs();
  const double lmax = ev.maxCoeff();
  if (lmax == 0.0) {
    r.rank = n;  // counts kernel dimension here
    return r;
  }
  const double threshold = kKernelEps * lmax * static_cast<double>(n);
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < threshold) ++r.rank;
    if (ev(i) >= threshold / kAmbiguityFactor &&
        ev(i) <= threshold * kAmbiguityFactor)
      r.ambiguous = true;
  }
  return r;
}

}  // namespace

BettiVector betti_numbers(const GradedMatrix& d, double d_sq_tol) {
  const Matrix& m = d.matrix();
  if (max_abs(Matrix(m * m)) > d_sq_tol)
    throw std::invalid_argument("betti_numbers: d^2 != 0 beyond tolerance");
  const Grading& g = d.grading();
  const int degs = g.degrees();

  BettiVector out;
  std::vector<int> ranks(std::max(degs, 1), 0);
  bool flagged = false;
  for (int p = 0; p + 1 < degs; ++p) {
    RankResult r = rank_of(d.block(p + 1, p));
    ranks[p] = r.rank;
    flagged |= r.ambiguous;
  }
  for (int p = 0; p < degs; ++p) {
    int rank_prev = p > 0 ? ranks[p - 1] : 0;
    int rank_here = p + 1 < degs ? ranks[p] : 0;
    out.b.push_back(g.size(p) - rank_here - rank_prev);
  }

  // Independent route: harmonic forms of the Hodge Laplacian per degree.
  const Matrix D = m + m.adjoint();
  const Matrix L = D * D;
  for (int p = 0; p < degs; ++p) {
    RankResult k = kernel_of(
        L.block(g.start(p), g.start(p), g.size(p), g.size(p)));
    out.kernel_route.push_back(k.rank);
    flagged |= k.ambiguous;
  }

  out.flagged = flagged || out.b != out.kernel_route;
  return out;
}

BettiVector deformed_betti(const FlowTrajectory& traj, double t) {
  const FlowState& s = traj.at_time(t);
  return betti_numbers(s.dec.d_part, 1e-7);
}

ComplexSplit complex_split(const GradedMatrix& d) {
  const Grading& g = d.grading();
  Matrix del = d.matrix().real().cast<Complex>();
  Matrix delbar =
      Complex(0.0, 1.0) * d.matrix().imag().cast<Complex>();
  ComplexSplit split{GradedMatrix(g, del), GradedMatrix(g, delbar)};
  split.del_sq_residual = max_abs(Matrix(del * del));
  split.delbar_sq_residual = max_abs(Matrix(delbar * delbar));
  split.anticommutator_residual =
      max_abs(Matrix(del * delbar + delbar * del));
  return split;
}

KahlerResult kahler_test(const ComplexSplit& split) {
  const Matrix& del = split.del.matrix();
  const Matrix& delbar = split.delbar.matrix();
  const Matrix d_del = del + del.adjoint();
  const Matrix d_delbar = delbar + delbar.adjoint();
  const Matrix c = d_del + d_delbar;  // = d + d^*
  KahlerResult out{};
  out.gap = max_abs(Matrix(d_del - d_delbar));
  out.laplacian_split_residual =
      max_abs(Matrix(c * c - d_del * d_del - d_delbar * d_delbar));
  return out;
}

}  // namespace diracflow
