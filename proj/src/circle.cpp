#include "diracflow/circle.hpp"

#include <cmath>
#include <stdexcept>

namespace diracflow {

TruncatedCircle circle_init(int n_max) {
  if (n_max < 1) throw std::invalid_argument("circle_init: n_max must be >= 1");
  const int m = 2 * n_max + 1;
  TruncatedCircle tc;
  tc.n_max = n_max;
  tc.coupling = Matrix::Zero(m, m);
  for (int i = 0; i < m; ++i)
    tc.coupling(i, i) = Complex(0.0, static_cast<double>(i - n_max));
  tc.even_block = Matrix::Zero(m, m);
  tc.odd_block = Matrix::Zero(m, m);
  return tc;
}

Matrix circle_invariant(const TruncatedCircle& tc) {
  return tc.coupling * tc.odd_block + tc.even_block * tc.coupling;
}

std::pair<Matrix, Matrix> circle_block_laplacian(const TruncatedCircle& tc) {
  const Matrix& a = tc.coupling;
  return {tc.even_block * tc.even_block + a * a.adjoint(),
          tc.odd_block * tc.odd_block + a.adjoint() * a};
}

CircleTrajectory circle_flow(const TruncatedCircle& start, double t_end,
                             double dt, int snapshot_count) {
  if (t_end <= 0.0 || dt <= 0.0 || dt > t_end)
    throw std::invalid_argument("circle_flow: need 0 < dt <= t_end");
  const int m = start.modes();

  CircleTrajectory traj;
  traj.n_max = start.n_max;
  traj.dt = dt;

  const Matrix invariant0 = circle_invariant(start);
  const auto [lap0_0, lap1_0] = circle_block_laplacian(start);
  const double tr_l_total = (lap0_0.trace() + lap1_0.trace()).real();
  const double conv_threshold = 1e-6 * tr_l_total;

  const long n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(t_end / dt - 1e-9)));
  const long stride =
      std::max<long>(1, n_steps / std::max(1, snapshot_count));

  Matrix a = start.coupling, b = start.even_block, c = start.odd_block;
  Matrix ka(m, m), kb(m, m), kc(m, m), aa(m, m), ab(m, m), ac(m, m);
  Matrix ta(m, m), tb(m, m), tc_(m, m);

  auto eval = [&](const Matrix& sa, const Matrix& sb, const Matrix& sc) {
    (void)sb;
    kb.noalias() = 2.0 * (sa * sa.adjoint());
    ka.noalias() = 2.0 * (sa * sc);
    kc.noalias() = -2.0 * (sa.adjoint() * sa);
  };

  auto record = [&](long k) {
    TruncatedCircle state{start.n_max, a, b, c};
    CircleSnapshot snap;
    snap.t = k * dt;
    snap.invariant_drift = max_abs(Matrix(circle_invariant(state) - invariant0));
    const auto [l0, l1] = circle_block_laplacian(state);
    snap.lap0_drift = max_abs(Matrix(l0 - lap0_0));
    snap.lap1_drift = max_abs(Matrix(l1 - lap1_0));
    snap.coupling_max = max_abs(a);
    snap.tr_m = 2.0 * a.squaredNorm();
    snap.tr_b2 = (b * b + c * c).trace().real();
    snap.state = std::move(state);
    traj.snapshots.push_back(std::move(snap));
  };

  for (long k = 0;; ++k) {
    if (!a.allFinite() || !b.allFinite() || !c.allFinite()) {
      traj.status = CircleStatus::unstable;
      traj.suggested_dt = dt / 4.0;
      traj.final_time = k * dt;
      return traj;
    }
    const double tr_m = 2.0 * a.squaredNorm();
    const bool at_end = (k == n_steps);
    const bool converged = (k > 0 && tr_m < conv_threshold);
    if (converged || at_end) {
      record(k);
      traj.status =
          converged ? CircleStatus::converged : CircleStatus::completed;
      traj.final_time = k * dt;
      return traj;
    }
    if (k % stride == 0) record(k);

    eval(a, b, c);
    aa = ka;
    ab = kb;
    ac = kc;
    ta = a + (0.5 * dt) * ka;
    tb = b + (0.5 * dt) * kb;
    tc_ = c + (0.5 * dt) * kc;
    eval(ta, tb, tc_);
    aa += 2.0 * ka;
    ab += 2.0 * kb;
    ac += 2.0 * kc;
    ta = a + (0.5 * dt) * ka;
    tb = b + (0.5 * dt) * kb;
    tc_ = c + (0.5 * dt) * kc;
    eval(ta, tb, tc_);
    aa += 2.0 * ka;
    ab += 2.0 * kb;
    ac += 2.0 * kc;
    ta = a + dt * ka;
    tb = b + dt * kb;
    tc_ = c + dt * kc;
    eval(ta, tb, tc_);
    aa += ka;
    ab += kb;
    ac += kc;
    a += (dt / 6.0) * aa;
    b += (dt / 6.0) * ab;
    c += (dt / 6.0) * ac;
  }
}

}  // namespace diracflow
