#include "diracflow/lax_flow.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace diracflow {

namespace {

// d_dot = coeff (d b - b d), filled block by block on the degree +1 support.
void block_d_dot(const Grading& g, const Matrix& d, const Matrix& b,
                 Complex coeff, Matrix& out) {
  out.setZero();
  for (int p = 0; p + 1 < g.degrees(); ++p) {
    const int np = g.size(p), nq = g.size(p + 1);
    if (np == 0 || nq == 0) continue;
    auto dp = d.block(g.start(p + 1), g.start(p), nq, np);
    auto bp = b.block(g.start(p), g.start(p), np, np);
    auto bq = b.block(g.start(p + 1), g.start(p + 1), nq, nq);
    out.block(g.start(p + 1), g.start(p), nq, np).noalias() = dp * bp;
    out.block(g.start(p + 1), g.start(p), nq, np).noalias() -= bq * dp;
    out.block(g.start(p + 1), g.start(p), nq, np) *= coeff;
  }
}

// b_dot = scale * 2 (d d^* - d^* d) on the diagonal support.
void block_b_dot(const Grading& g, const Matrix& d, double scale, Matrix& out) {
  out.setZero();
  for (int p = 0; p < g.degrees(); ++p) {
    const int np = g.size(p);
    if (np == 0) continue;
    auto target = out.block(g.start(p), g.start(p), np, np);
    if (p > 0 && g.size(p - 1) > 0) {
      auto dprev = d.block(g.start(p), g.start(p - 1), np, g.size(p - 1));
      target.noalias() += (2.0 * scale) * (dprev * dprev.adjoint());
    }
    if (p + 1 < g.degrees() && g.size(p + 1) > 0) {
      auto dp = d.block(g.start(p + 1), g.start(p), g.size(p + 1), np);
      target.noalias() -= (2.0 * scale) * (dp.adjoint() * dp);
    }
  }
}

void assemble_generator(const Matrix& d, const Matrix& b, double beta,
                        Matrix& out) {
  out = d - d.adjoint();
  if (beta != 0.0) out += Complex(0.0, beta) * b;
}

struct FlowSetup {
  Grading grading;
  Matrix laplacian0;
  RealVector spectrum0;
  double tr_l0 = 0.0;
  double dt = 0.0;
  long n_steps = 0;
  std::set<long> snap_steps;
  RealVector parity_sign;
};

FlowSetup make_setup(const GradedMatrix& D0, const FlowConfig& cfg) {
  if (cfg.t_end <= 0.0) throw std::invalid_argument("flow: t_end must be > 0");
  if (cfg.drift_tol <= 0.0)
    throw std::invalid_argument("flow: drift_tol must be > 0");

  FlowSetup s;
  s.grading = D0.grading();
  const int v = s.grading.total();
  s.laplacian0 = D0.matrix() * D0.matrix();
  s.tr_l0 = s.laplacian0.trace().real();
  Eigen::SelfAdjointEigenSolver<Matrix> es(D0.matrix(), Eigen::EigenvaluesOnly);
  s.spectrum0 = es.eigenvalues();
  const double top =
      s.spectrum0.size() == 0 ? 0.0 : s.spectrum0.cwiseAbs().maxCoeff();
  const double rho = top * top;
  // The complex variant evolves d a factor |1 - i beta| faster; shrink the
  // default step accordingly to hold the same drift budget.
  const double beta_scale = 1.0 + cfg.beta * cfg.beta;
  s.dt = cfg.dt > 0.0 ? cfg.dt
                      : std::min(0.01, 0.1 / ((1.0 + rho) * beta_scale));
  if (s.dt > cfg.t_end + 1e-15)
    throw std::invalid_argument("flow: dt exceeds t_end");
  s.n_steps = std::max<long>(
      1, static_cast<long>(std::ceil(cfg.t_end / s.dt - 1e-9)));
  s.snap_steps.insert(0);
  for (double t : cfg.snapshot_times) {
    if (t < -1e-12 || t > cfg.t_end + 1e-12)
      throw std::invalid_argument("flow: snapshot time outside [0, t_end]");
    s.snap_steps.insert(std::clamp<long>(std::lround(t / s.dt), 0, s.n_steps));
  }
  s.parity_sign.resize(v);
  for (int p = 0; p < s.grading.degrees(); ++p)
    s.parity_sign.segment(s.grading.start(p), s.grading.size(p))
        .setConstant(p % 2 == 0 ? 1.0 : -1.0);
  return s;
}

void fill_diagnostics(const FlowSetup& setup, int time_sign, FlowState& s,
                      Matrix& scratch, double& drift_out) {
  const Matrix& sd = s.dec.d_part.matrix();
  const Matrix& sb = s.dec.b_part.matrix();
  s.diag.tr_m = 2.0 * sd.squaredNorm();
  s.diag.tr_b2 = sb.squaredNorm();
  block_b_dot(setup.grading, sd, static_cast<double>(time_sign), scratch);
  s.diag.d_dt_tr_b2 = 2.0 * sb.cwiseProduct(scratch.conjugate()).sum().real();
  Matrix D_t = sd + sd.adjoint() + sb;
  if (D_t.rows() > 0) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(D_t, Eigen::EigenvaluesOnly);
    s.diag.spectral_drift =
        (es.eigenvalues() - setup.spectrum0).cwiseAbs().maxCoeff();
  }
  drift_out = max_abs(Matrix(D_t * D_t - setup.laplacian0));
  s.diag.str_u =
      (setup.parity_sign.cast<Complex>().asDiagonal() * s.propagator).trace();
}

FlowTrajectory run_flow_blocks(const GradedMatrix& D0, const FlowConfig& cfg,
                               int time_sign) {
  BlockExtraction ext = extract_blocks(D0, cfg.beta);
  if (ext.residual > 1e-12 || ext.decomposition.b_part.max_abs() > 1e-12)
    throw std::invalid_argument(
        "flow: initial operator must be an undeformed Dirac operator");

  FlowSetup setup = make_setup(D0, cfg);
  const Grading& g = setup.grading;
  const int v = g.total();
  const double dt = setup.dt;

  FlowTrajectory traj;
  traj.config = cfg;
  traj.grading = g;
  traj.dt = dt;
  traj.time_sign = time_sign;
  traj.laplacian0 = setup.laplacian0;
  traj.spectrum0 = setup.spectrum0;
  traj.tr_l0 = setup.tr_l0;

  Matrix d = ext.decomposition.d_part.matrix();
  Matrix b = Matrix::Zero(v, v);
  Matrix U = Matrix::Identity(v, v);
  Matrix prev_d = d, prev_b = b, prev_U = U;

  Matrix kd(v, v), kb(v, v), ku(v, v), ad(v, v), ab(v, v), au(v, v);
  Matrix td(v, v), tb(v, v), tu(v, v), gen(v, v), scratch(v, v);
  const Complex d_coeff =
      Complex(1.0, -cfg.beta) * static_cast<double>(time_sign);

  long last_recorded = -1;
  double last_drift = 0.0;
  auto record = [&](long k, const Matrix& sd, const Matrix& sb,
                    const Matrix& sU) {
    if (k == last_recorded) return;
    FlowState s;
    s.t = k * dt;
    s.dec = DiracDecomposition{GradedMatrix(g, sd), GradedMatrix(g, sb),
                               cfg.beta};
    s.propagator = sU;
    fill_diagnostics(setup, time_sign, s, scratch, last_drift);
    traj.snapshots.push_back(std::move(s));
    last_recorded = k;
  };

  const double conv_threshold = cfg.convergence_rel * setup.tr_l0;

  auto eval = [&](const Matrix& sd, const Matrix& sb, const Matrix& sU) {
    block_d_dot(g, sd, sb, d_coeff, kd);
    block_b_dot(g, sd, static_cast<double>(time_sign), kb);
    assemble_generator(sd, sb, cfg.beta, gen);
    ku.noalias() = gen * sU;
    if (time_sign < 0) ku = -ku;
  };

  for (long k = 0;; ++k) {
    const double tr_m = 2.0 * d.squaredNorm();
    const bool at_end = (k == setup.n_steps);
    const bool converged = (k > 0 && tr_m < conv_threshold);

    if (converged || at_end) {
      if (k >= 1) record(k - 1, prev_d, prev_b, prev_U);
      record(k, d, b, U);
      traj.termination =
          converged ? Termination::converged : Termination::completed;
      traj.final_time = k * dt;
      if (last_drift > cfg.drift_tol)
        traj.termination = Termination::drift_abort;
      return traj;
    }

    if (setup.snap_steps.count(k)) {
      record(k, d, b, U);
      if (last_drift > cfg.drift_tol) {
        traj.termination = Termination::drift_abort;
        traj.final_time = k * dt;
        return traj;
      }
    }

    prev_d = d;
    prev_b = b;
    prev_U = U;

    eval(d, b, U);
    ad = kd;
    ab = kb;
    au = ku;
    td = d + (0.5 * dt) * kd;
    tb = b + (0.5 * dt) * kb;
    tu = U + (0.5 * dt) * ku;

    eval(td, tb, tu);
    ad += 2.0 * kd;
    ab += 2.0 * kb;
    au += 2.0 * ku;
    td = d + (0.5 * dt) * kd;
    tb = b + (0.5 * dt) * kb;
    tu = U + (0.5 * dt) * ku;

    eval(td, tb, tu);
    ad += 2.0 * kd;
    ab += 2.0 * kb;
    au += 2.0 * ku;
    td = d + dt * kd;
    tb = b + dt * kb;
    tu = U + dt * ku;

    eval(td, tb, tu);
    ad += kd;
    ab += kb;
    au += ku;

    d += (dt / 6.0) * ad;
    b += (dt / 6.0) * ab;
    U += (dt / 6.0) * au;
  }
}

FlowTrajectory run_flow_full(const GradedMatrix& D0, const FlowConfig& cfg) {
  // Cross-check mode: RK4 on the full pair (D, U), the generator re-extracted
  // from D at every stage. Degree structure is measured, not built in.
  BlockExtraction ext0 = extract_blocks(D0, cfg.beta);
  if (ext0.residual > 1e-12 || ext0.decomposition.b_part.max_abs() > 1e-12)
    throw std::invalid_argument(
        "flow: initial operator must be an undeformed Dirac operator");

  FlowSetup setup = make_setup(D0, cfg);
  const Grading& g = setup.grading;
  const int v = g.total();
  const double dt = setup.dt;

  FlowTrajectory traj;
  traj.config = cfg;
  traj.grading = g;
  traj.dt = dt;
  traj.laplacian0 = setup.laplacian0;
  traj.spectrum0 = setup.spectrum0;
  traj.tr_l0 = setup.tr_l0;

  Matrix D = D0.matrix();
  Matrix U = Matrix::Identity(v, v);
  Matrix prev_D = D, prev_U = U;
  Matrix gen(v, v), kD(v, v), kU(v, v), aD(v, v), aU(v, v), tD(v, v), tU(v, v);
  Matrix scratch(v, v);

  auto generator_of = [&](const Matrix& M, Matrix& out) {
    out.setZero();
    for (int p = 0; p < g.degrees(); ++p) {
      const int np = g.size(p);
      if (np == 0) continue;
      if (cfg.beta != 0.0)
        out.block(g.start(p), g.start(p), np, np) =
            Complex(0.0, cfg.beta) * M.block(g.start(p), g.start(p), np, np);
      if (p + 1 < g.degrees() && g.size(p + 1) > 0) {
        auto dp = M.block(g.start(p + 1), g.start(p), g.size(p + 1), np);
        out.block(g.start(p + 1), g.start(p), g.size(p + 1), np) = dp;
        out.block(g.start(p), g.start(p + 1), np, g.size(p + 1)) =
            -dp.adjoint();
      }
    }
  };

  long last_recorded = -1;
  double last_drift = 0.0;
  auto record = [&](long k, const Matrix& sD, const Matrix& sU) {
    if (k == last_recorded) return;
    BlockExtraction ext = extract_blocks(GradedMatrix(g, sD), cfg.beta);
    FlowState s;
    s.t = k * dt;
    s.dec = ext.decomposition;
    s.propagator = sU;
    fill_diagnostics(setup, +1, s, scratch, last_drift);
    s.diag.structure_residual = ext.residual;
    traj.snapshots.push_back(std::move(s));
    last_recorded = k;
  };

  const double conv_threshold = cfg.convergence_rel * setup.tr_l0;
  double tr_m = 0.0;
  auto current_tr_m = [&](const Matrix& M) {
    double sum = 0.0;
    for (int p = 0; p + 1 < g.degrees(); ++p)
      sum += M.block(g.start(p + 1), g.start(p), g.size(p + 1), g.size(p))
                 .squaredNorm();
    return 2.0 * sum;
  };

  auto eval = [&](const Matrix& sD, const Matrix& sU) {
    generator_of(sD, gen);
    kD.noalias() = gen * sD;
    kD.noalias() -= sD * gen;
    kU.noalias() = gen * sU;
  };

  for (long k = 0;; ++k) {
    tr_m = current_tr_m(D);
    const bool at_end = (k == setup.n_steps);
    const bool converged = (k > 0 && tr_m < conv_threshold);
    if (converged || at_end) {
      if (k >= 1) record(k - 1, prev_D, prev_U);
      record(k, D, U);
      traj.termination =
          converged ? Termination::converged : Termination::completed;
      traj.final_time = k * dt;
      if (last_drift > cfg.drift_tol)
        traj.termination = Termination::drift_abort;
      return traj;
    }
    if (setup.snap_steps.count(k)) {
      record(k, D, U);
      if (last_drift > cfg.drift_tol) {
        traj.termination = Termination::drift_abort;
        traj.final_time = k * dt;
        return traj;
      }
    }
    prev_D = D;
    prev_U = U;

    eval(D, U);
    aD = kD;
    aU = kU;
    tD = D + (0.5 * dt) * kD;
    tU = U + (0.5 * dt) * kU;
    eval(tD, tU);
    aD += 2.0 * kD;
    aU += 2.0 * kU;
    tD = D + (0.5 * dt) * kD;
    tU = U + (0.5 * dt) * kU;
    eval(tD, tU);
    aD += 2.0 * kD;
    aU += 2.0 * kU;
    tD = D + dt * kD;
    tU = U + dt * kU;
    eval(tD, tU);
    aD += kD;
    aU += kU;
    D += (dt / 6.0) * aD;
    U += (dt / 6.0) * aU;
  }
}

}  // namespace

BlockRhs rhs(const DiracDecomposition& dec) {
  const Grading& g = dec.d_part.grading();
  GradedMatrix d_dot = GradedMatrix::zero(g);
  GradedMatrix b_dot = GradedMatrix::zero(g);
  block_d_dot(g, dec.d_part.matrix(), dec.b_part.matrix(),
              Complex(1.0, -dec.beta), d_dot.matrix());
  block_b_dot(g, dec.d_part.matrix(), 1.0, b_dot.matrix());
  return {std::move(d_dot), std::move(b_dot), b_operator(dec)};
}

const FlowState& FlowTrajectory::at_time(double t) const {
  const double tol = 0.5 * dt + 1e-12;
  for (const auto& s : snapshots)
    if (std::abs(s.t - t) <= tol) return s;
  throw std::invalid_argument("no snapshot near requested time");
}

FlowTrajectory run_flow(const GradedMatrix& D0, FlowConfig cfg) {
  if (cfg.method == FlowMethod::rk4_full) return run_flow_full(D0, cfg);
  return run_flow_blocks(D0, cfg, +1);
}

std::pair<FlowTrajectory, FlowTrajectory> run_bidirectional(
    const GradedMatrix& D0, FlowConfig cfg) {
  FlowTrajectory forward = run_flow(D0, cfg);
  FlowTrajectory backward = run_flow_blocks(D0, cfg, -1);
  return {std::move(forward), std::move(backward)};
}

AsymptoticsSummary asymptotics(const FlowTrajectory& traj) {
  if (traj.termination != Termination::converged)
    throw std::runtime_error("asymptotics: trajectory did not converge");
  const FlowState& last = traj.snapshots.back();
  const Matrix& b = last.dec.b_part.matrix();
  AsymptoticsSummary out{};
  out.b_sq_vs_l = max_abs(Matrix(b * b - traj.laplacian0));
  out.d_norm = last.dec.d_part.max_abs();
  out.c_norm = max_abs(
      Matrix(last.dec.d_part.matrix() + last.dec.d_part.matrix().adjoint()));
  if (traj.config.beta == 0.0 && traj.snapshots.size() >= 2) {
    const FlowState& prev = traj.snapshots[traj.snapshots.size() - 2];
    out.u_cauchy_tail = max_abs(Matrix(last.propagator - prev.propagator));
  }
  return out;
}

std::vector<InflationPoint> inflation_profile(const FlowTrajectory& traj) {
  if (traj.snapshots.size() < 3)
    throw std::invalid_argument("inflation_profile: need at least 3 snapshots");
  std::vector<InflationPoint> out;
  out.reserve(traj.snapshots.size());
  for (const auto& s : traj.snapshots)
    out.push_back({s.t, s.diag.tr_m, -s.diag.d_dt_tr_b2});
  return out;
}

}  // namespace diracflow
