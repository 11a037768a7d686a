#include "diracflow/verification.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "diracflow/cohomology.hpp"
#include "diracflow/io.hpp"
#include "diracflow/operators.hpp"

namespace diracflow {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::flagged: return "flagged";
  }
  return "fail";
}

std::vector<std::pair<std::string, double>> Tolerances::named() const {
  return {{"isospectrality", isospectrality},
          {"l_invariance", l_invariance},
          {"unitarity", unitarity},
          {"str_u", str_u},
          {"heat_supertrace", heat_supertrace},
          {"monotone_slack", monotone_slack},
          {"oq_sign", oq_sign},
          {"commuting_family", commuting_family},
          {"degree_structure", degree_structure},
          {"d_squared", d_squared},
          {"hermiticity", hermiticity},
          {"time_symmetry", time_symmetry},
          {"beta_independence", beta_independence},
          {"split_residual", split_residual},
          {"kahler_split", kahler_split},
          {"im_m", im_m},
          {"fade_ratio", fade_ratio},
          {"str_b_power", str_b_power},
          {"superpartner_t0", superpartner_t0},
          {"superpartner_final", superpartner_final}};
}

Tolerances Tolerances::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("cannot open tolerance table: " + path);
  nlohmann::json j;
  in >> j;
  Tolerances t;
  auto get = [&](const char* key, double& field) {
    if (j.contains(key)) field = j.at(key).get<double>();
  };
  get("isospectrality", t.isospectrality);
  get("l_invariance", t.l_invariance);
  get("unitarity", t.unitarity);
  get("str_u", t.str_u);
  get("heat_supertrace", t.heat_supertrace);
  get("monotone_slack", t.monotone_slack);
  get("oq_sign", t.oq_sign);
  get("commuting_family", t.commuting_family);
  get("degree_structure", t.degree_structure);
  get("d_squared", t.d_squared);
  get("hermiticity", t.hermiticity);
  get("time_symmetry", t.time_symmetry);
  get("beta_independence", t.beta_independence);
  get("split_residual", t.split_residual);
  get("kahler_split", t.kahler_split);
  get("im_m", t.im_m);
  get("fade_ratio", t.fade_ratio);
  get("str_b_power", t.str_b_power);
  get("superpartner_t0", t.superpartner_t0);
  get("superpartner_final", t.superpartner_final);
  return t;
}

std::string InvariantReport::to_json() const {
  nlohmann::ordered_json j;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["anchor"] = c.anchor;
    jc["residual"] = c.residual;
    jc["tol"] = c.tol;
    jc["verdict"] = diracflow::to_string(c.verdict);
    j["checks"].push_back(jc);
  }
  j["overall"] = overall ? "pass" : "fail";
  nlohmann::ordered_json meta_json;
  for (const auto& [k, v] : meta) meta_json[k] = v;
  j["meta"] = meta_json;
  nlohmann::ordered_json tol_json;
  for (const auto& [k, v] : tolerances.named()) tol_json[k] = v;
  j["tolerances"] = tol_json;
  return j.dump(2) + "\n";
}

namespace {

Matrix dd_star(const FlowState& s) {
  const Matrix& d = s.dec.d_part.matrix();
  return d * d.adjoint();
}

Matrix d_star_d(const FlowState& s) {
  const Matrix& d = s.dec.d_part.matrix();
  return d.adjoint() * d;
}

RealVector symmetric_eigenvalues(const Matrix& m) {
  if (m.rows() == 0) return RealVector(0);
  const Matrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double commutator_norm(const Matrix& a, const Matrix& b) {
  return max_abs(Matrix(a * b - b * a));
}

}  // namespace

InvariantReport verify_trajectory(const FlowTrajectory& traj,
                                  const SimplicialComplex& complex,
                                  const VerifyOptions& opts) {
  const Tolerances& tol = opts.tol;
  InvariantReport report;
  report.tolerances = tol;

  const int chi = euler_characteristic(complex);
  const Grading g(complex.f_vector());
  const GradedMatrix P = parity(g);
  const GradedMatrix L0(g, traj.laplacian0);

  auto add = [&](const std::string& name, const std::string& anchor,
                 double residual, double bound,
                 bool force_flag = false) {
    CheckRecord c{name, anchor, residual, bound, Verdict::pass};
    if (force_flag)
      c.verdict = Verdict::flagged;
    else if (!(residual <= bound))
      c.verdict = Verdict::fail;
    if (c.verdict == Verdict::fail) report.overall = false;
    report.checks.push_back(std::move(c));
  };

  const auto& snaps = traj.snapshots;

  // Structural health of every snapshot.
  double herm = 0.0, d_sq = 0.0, structure = 0.0;
  for (const auto& s : snaps) {
    const Matrix D_t = assemble_dirac(s.dec).matrix();
    herm = std::max(herm, max_abs(Matrix(D_t - D_t.adjoint())));
    const Matrix& d = s.dec.d_part.matrix();
    d_sq = std::max(d_sq, max_abs(Matrix(d * d)));
    structure = std::max(structure, s.diag.structure_residual);
    structure = std::max(structure, s.dec.d_part.off_support_residual({+1}));
    structure = std::max(structure, s.dec.b_part.off_support_residual({0}));
    structure = std::max(structure, s.dec.b_part.hermiticity_residual());
  }
  add("hermiticity", "D(t) = D(t)^*", herm, tol.hermiticity);
  add("d_squared", "d(t)^2 = 0", d_sq, tol.d_squared);
  add("degree_structure", "D(t) = d + d^* + b (block tridiagonal)", structure,
      tol.degree_structure);

  // Lax invariants, recomputed from the stored operators rather than trusted
  // from the flow's own diagnostics.
  double iso = 0.0, l_drift = 0.0, unit = 0.0, str_u = 0.0;
  for (const auto& s : snaps) {
    const Matrix D_t = assemble_dirac(s.dec).matrix();
    if (D_t.rows() > 0) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(D_t, Eigen::EigenvaluesOnly);
      iso = std::max(
          iso, (es.eigenvalues() - traj.spectrum0).cwiseAbs().maxCoeff());
    }
    l_drift = std::max(l_drift, max_abs(Matrix(D_t * D_t - traj.laplacian0)));
    unit = std::max(
        unit, max_abs(Matrix(s.propagator.adjoint() * s.propagator -
                             Matrix::Identity(s.propagator.rows(),
                                              s.propagator.cols()))));
    const Complex str_u_here =
        supertrace(P, GradedMatrix(g, s.propagator));
    str_u = std::max(str_u, std::abs(str_u_here - Complex(chi, 0.0)));
  }
  add("isospectrality", "sigma(D(t)) = sigma(D(0))", iso, tol.isospectrality);
  add("l_invariance", "L(t) = L(0)", l_drift, tol.l_invariance);
  add("unitarity", "U(t)^* U(t) = 1", unit, tol.unitarity);
  // str(U) is conserved by the real generator only; with the i beta b term
  // str(B'(0)) no longer vanishes, so the residual is informational there.
  add("mckean_singer_nonlinear", "str(U(t)) = chi(G)", str_u, tol.str_u,
      traj.config.beta != 0.0);

  // Heat-kernel supertrace at fixed times.
  double heat = 0.0;
  for (double t : {0.1, 1.0, 10.0})
    heat = std::max(heat,
                    std::abs(mckean_singer_heat(L0, P, t) - chi));
  add("mckean_singer_heat", "str(exp(-L t)) = chi(G)", heat,
      tol.heat_supertrace);

  // str(B^k) = 0 at t = 0.
  {
    const GradedMatrix B0 = b_operator(snaps.front().dec);
    Matrix Bk = Matrix::Identity(B0.dim(), B0.dim());
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
      Bk = Bk * B0.matrix();
      worst = std::max(worst,
                       std::abs(supertrace(P, GradedMatrix(g, Bk))));
    }
    add("str_b_powers", "str(B(0)^k) = 0, k = 1..4", worst, tol.str_b_power);
  }

  // Monotone Lyapunov pair.
  double monotone = 0.0;
  for (std::size_t i = 0; i + 1 < snaps.size(); ++i) {
    monotone = std::max(
        monotone, snaps[i].diag.tr_b2 - snaps[i + 1].diag.tr_b2);
    monotone =
        std::max(monotone, snaps[i + 1].diag.tr_m - snaps[i].diag.tr_m);
  }
  add("monotone_traces", "tr(b^2) nondecreasing, tr(M) nonincreasing",
      monotone, tol.monotone_slack);

  // Sign-definite products and the commuting family, for t > 0.
  double oq = 0.0, commuting = 0.0;
  for (const auto& s : snaps) {
    if (s.t <= 0.0) continue;
    const Matrix r = dd_star(s);
    const Matrix q = d_star_d(s);
    const Matrix& b = s.dec.b_part.matrix();
    const RealVector o_eigs = symmetric_eigenvalues(b * r);
    const RealVector q_eigs = symmetric_eigenvalues(b * q);
    if (o_eigs.size()) oq = std::max(oq, std::max(0.0, -o_eigs.minCoeff()));
    if (q_eigs.size()) oq = std::max(oq, std::max(0.0, q_eigs.maxCoeff()));
    const Matrix b2 = b * b;
    commuting = std::max({commuting, commutator_norm(b, r),
                          commutator_norm(b, q), commutator_norm(r, q),
                          commutator_norm(b2, r), commutator_norm(b2, q)});
  }
  add("oq_signs", "b d d^* >= 0, b d^* d <= 0", oq, tol.oq_sign);
  add("commuting_family", "[x, y] = 0 for x, y in {b, dd^*, d^*d, b^2}",
      commuting, tol.commuting_family);

  // Cohomology constancy along the flow.
  std::string betti_text;
  {
    BettiVector initial = betti_numbers(snaps.front().dec.d_part);
    for (std::size_t p = 0; p < initial.b.size(); ++p)
      betti_text += (p ? " " : "") + std::to_string(initial.b[p]);
    const int ep = alternating_sum(initial.b);
    add("euler_poincare", "sum_p (-1)^p b_p = chi(G)",
        std::abs(static_cast<double>(ep - chi)), 0.0,
        initial.flagged);
    double mismatch = 0.0;
    bool any_flagged = initial.flagged;
    for (const auto& s : snaps) {
      BettiVector bv;
      try {
        bv = betti_numbers(s.dec.d_part, 1e-7);
      } catch (const std::invalid_argument&) {
        mismatch = std::max(mismatch, 1.0);
        continue;
      }
      if (bv.flagged) {
        any_flagged = true;
        continue;
      }
      if (bv.b != initial.b) mismatch = std::max(mismatch, 1.0);
    }
    add("betti_constancy", "betti(d(t)) = betti(d(0))", mismatch, 0.0,
        mismatch == 0.0 && any_flagged);
  }

  // Time symmetry against a backward run.
  if (opts.backward != nullptr) {
    double sym = 0.0;
    for (const auto& s : snaps) {
      const FlowState* mirror = nullptr;
      try {
        mirror = &opts.backward->at_time(s.t);
      } catch (const std::invalid_argument&) {
        continue;
      }
      const Matrix D_f = assemble_dirac(s.dec).matrix();
      const Matrix D_b = assemble_dirac(mirror->dec).matrix();
      const Matrix C_f = assemble_c(s.dec).matrix();
      sym = std::max(sym, max_abs(Matrix(D_f + D_b - 2.0 * C_f)));
    }
    add("time_symmetry", "D(t) + D(-t) = 2 C(t)", sym, tol.time_symmetry);
  }

  // b is the same at every beta.
  if (opts.beta_pair != nullptr) {
    double diff = 0.0;
    for (const auto& s : snaps) {
      const FlowState* other = nullptr;
      try {
        other = &opts.beta_pair->at_time(s.t);
      } catch (const std::invalid_argument&) {
        continue;
      }
      diff = std::max(diff, max_abs(Matrix(s.dec.b_part.matrix() -
                                           other->dec.b_part.matrix())));
    }
    add("beta_independence", "b(t) identical for every beta", diff,
        tol.beta_independence);
  }

  // Emergent complex structure for the beta flow.
  if (traj.config.beta != 0.0) {
    const bool real_start =
        max_abs(Matrix(snaps.front().dec.d_part.matrix().imag()
                           .cast<Complex>())) < 1e-14;
    double emergence_shortfall = 1.0;
    for (const auto& s : snaps) {
      if (s.t <= 0.0) continue;
      const double im_mass =
          max_abs(Matrix(assemble_dirac(s.dec).matrix().imag().cast<Complex>()));
      emergence_shortfall = std::min(
          emergence_shortfall, std::max(0.0, 1e-12 - im_mass));
      break;
    }
    add("im_emergence", "||Im D(t)|| > 0 for small t > 0",
        emergence_shortfall, 0.0);

    const Matrix D_last = assemble_dirac(snaps.back().dec).matrix();
    const double re_mass = max_abs(Matrix(D_last.real().cast<Complex>()));
    const double im_mass = max_abs(Matrix(D_last.imag().cast<Complex>()));
    add("im_fade", "||Im D(t)|| / ||Re D(t)|| -> 0",
        re_mass > 0.0 ? im_mass / re_mass : 0.0, tol.fade_ratio);

    double split_res = 0.0, kahler_res = 0.0, im_m = 0.0;
    for (const auto& s : snaps) {
      if (s.t <= 0.0) continue;
      ComplexSplit split = complex_split(s.dec.d_part);
      split_res = std::max({split_res, split.del_sq_residual,
                            split.delbar_sq_residual,
                            split.anticommutator_residual});
      kahler_res = std::max(kahler_res,
                            kahler_test(split).laplacian_split_residual);
      if (real_start) {
        const Matrix C = assemble_c(s.dec).matrix();
        im_m = std::max(im_m,
                        max_abs(Matrix((C * C).imag().cast<Complex>())));
      }
    }
    add("split_residuals", "del^2 = delbar^2 = del delbar + delbar del = 0",
        split_res, tol.split_residual);
    add("kahler_laplacian_split", "C^2 = (del+del^*)^2 + (delbar+delbar^*)^2",
        kahler_res, tol.kahler_split);
    if (real_start)
      add("m_real", "M(t) = C(t)^2 real for real D(0)", im_m, tol.im_m);
  }

  // Metadata, fixed order.
  report.meta.emplace_back("beta", format_double(traj.config.beta));
  report.meta.emplace_back("dt", format_double(traj.dt));
  report.meta.emplace_back("t_end", format_double(traj.config.t_end));
  report.meta.emplace_back("drift_tol", format_double(traj.config.drift_tol));
  report.meta.emplace_back("method",
                           traj.config.method == FlowMethod::rk4_full
                               ? "rk4-full"
                               : "rk4-blocks");
  report.meta.emplace_back(
      "termination",
      traj.termination == Termination::converged
          ? "converged"
          : (traj.termination == Termination::drift_abort ? "drift_abort"
                                                          : "completed"));
  report.meta.emplace_back("final_time", format_double(traj.final_time));
  report.meta.emplace_back("chi", std::to_string(chi));
  report.meta.emplace_back("betti_numbers", betti_text);
  report.meta.emplace_back("total_dim", std::to_string(g.total()));
  report.meta.emplace_back("snapshots",
                           std::to_string(traj.snapshots.size()));
  for (const auto& kv : opts.extra_meta) report.meta.push_back(kv);

  return report;
}

SupersymmetryReport supersymmetry_breaking_report(const FlowTrajectory& traj,
                                                  const Spectrum& spec0) {
  if (!spec0.eigenvectors)
    throw std::invalid_argument(
        "supersymmetry_breaking_report: eigenvectors required");
  const Grading& g = traj.grading;
  const RealVector& ev = spec0.eigenvalues;
  const double zero_tol =
      ev.size() ? 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff()) : 0.0;

  SupersymmetryReport rep;
  for (const auto& s : traj.snapshots) rep.times.push_back(s.t);

  // The diagonal limit takes opposite signs on image and coimage content of
  // the same Laplacian eigenvalue. A degenerate eigenspace can mix the two,
  // and a mixed vector never aligns with its partner, so each even projection
  // is split into its d d^* and d^* d pieces first.
  const Matrix& d0 = traj.snapshots.front().dec.d_part.matrix();
  const Matrix coimage_op = d0.adjoint() * d0;

  std::vector<std::pair<double, ComplexVector>> probes;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev[i] <= zero_tol) continue;  // one of each +/- pair, kernel skipped
    ComplexVector f = spec0.eigenvectors->col(i);
    for (int p = 1; p < g.degrees(); p += 2)
      f.segment(g.start(p), g.size(p)).setZero();
    if (f.norm() < 1e-12) continue;
    const double lambda = ev[i] * ev[i];
    ComplexVector up = (coimage_op * f) / lambda;
    ComplexVector down = f - up;
    for (ComplexVector* piece : {&up, &down}) {
      const double norm = piece->norm();
      if (norm < 1e-8) continue;
      probes.emplace_back(ev[i], *piece / norm);
    }
  }

  for (auto& [eigenvalue, f] : probes) {
    SuperpartnerSeries series;
    series.eigenvalue = eigenvalue;
    bool harmonic = false;
    for (const auto& s : traj.snapshots) {
      const GradedMatrix D_t = assemble_dirac(s.dec);
      auto cosine = superpartner_cosine(f, D_t);
      if (!cosine) {
        harmonic = true;
        break;
      }
      series.cosine.push_back(*cosine);
    }
    if (harmonic || series.cosine.empty()) continue;
    rep.max_cosine_t0 = std::max(rep.max_cosine_t0, series.cosine.front());
    rep.min_cosine_final =
        std::min(rep.min_cosine_final, series.cosine.back());
    rep.series.push_back(std::move(series));
  }
  return rep;
}

}  // namespace diracflow
