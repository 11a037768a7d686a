#pragma once

#include <string>
#include <utility>
#include <vector>

#include "diracflow/clique_complex.hpp"
#include "diracflow/lax_flow.hpp"
#include "diracflow/spectral.hpp"

namespace diracflow {

/// One table for every threshold a verdict depends on; reports embed the
/// table they used.
struct Tolerances {
  double isospectrality = 1e-7;
  double l_invariance = 1e-7;
  double unitarity = 1e-7;
  double str_u = 1e-6;
  double heat_supertrace = 1e-9;
  double monotone_slack = 1e-9;
  double oq_sign = 1e-8;
  double commuting_family = 1e-7;
  double degree_structure = 1e-9;
  double d_squared = 1e-9;
  double hermiticity = 1e-8;
  double time_symmetry = 1e-6;
  double beta_independence = 1e-6;
  double split_residual = 1e-7;
  double kahler_split = 1e-6;
  double im_m = 1e-8;
  double fade_ratio = 0.05;
  double str_b_power = 1e-9;
  double superpartner_t0 = 1e-10;
  double superpartner_final = 0.95;  // lower bound on the converged cosine

  static Tolerances defaults() { return {}; }
  /// JSON object of field-name overrides, e.g. {"unitarity": 1e-6}.
  static Tolerances from_json_file(const std::string& path);
  std::vector<std::pair<std::string, double>> named() const;
};

enum class Verdict { pass, fail, flagged };

std::string to_string(Verdict v);

struct CheckRecord {
  std::string name;
  std::string anchor;  // the identity or bound being checked, as a formula
  double residual = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::pass;
};

struct InvariantReport {
  std::vector<CheckRecord> checks;
  bool overall = true;  // every non-flagged check passes
  std::vector<std::pair<std::string, std::string>> meta;
  Tolerances tolerances;

  /// Deterministic JSON: {"checks":[...], "overall":..., "meta":...,
  /// "tolerances":...}. Identical inputs give byte-identical output.
  std::string to_json() const;
};

struct VerifyOptions {
  const FlowTrajectory* backward = nullptr;   // enables the time-symmetry check
  const FlowTrajectory* beta_pair = nullptr;  // enables the b beta-independence check
  Tolerances tol = Tolerances::defaults();
  std::vector<std::pair<std::string, std::string>> extra_meta;
};

/// Runs every invariant check over the trajectory snapshots and folds the
/// verdicts into one report. Failures are verdicts, never exceptions.
InvariantReport verify_trajectory(const FlowTrajectory& traj,
                                  const SimplicialComplex& complex,
                                  const VerifyOptions& opts = {});

struct SuperpartnerSeries {
  double eigenvalue = 0.0;
  std::vector<double> cosine;  // per snapshot; harmonic slots stay empty
};

struct SupersymmetryReport {
  std::vector<double> times;
  std::vector<SuperpartnerSeries> series;
  double max_cosine_t0 = 0.0;   // should be ~0
  double min_cosine_final = 1.0;  // should approach 1
};

/// Superpartner cosines per snapshot for every non-harmonic eigenvector of
/// D(0), projected to its even-degree part. spec0 must carry eigenvectors.
SupersymmetryReport supersymmetry_breaking_report(const FlowTrajectory& traj,
                                                  const Spectrum& spec0);

}  // namespace diracflow
