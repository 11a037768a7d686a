// Command-line front end: clique complexes, the isospectral deformation,
// invariant verification, zeta tables, and the truncated circle system.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "diracflow/circle.hpp"
#include "diracflow/cohomology.hpp"
#include "diracflow/io.hpp"
#include "diracflow/lax_flow.hpp"
#include "diracflow/operators.hpp"
#include "diracflow/spectral.hpp"
#include "diracflow/svg.hpp"
#include "diracflow/verification.hpp"

namespace fs = std::filesystem;
using namespace diracflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitUsage = 2;

struct InputOptions {
  std::string path;
  bool generate = false;
  int n = 20;
  double p = 0.45;
  std::uint64_t seed = 7;
  int max_dim = -1;  // -1 = unlimited
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("input", in.path,
                  "graph file (edge list, or JSON {\"n\":..,\"edges\":..})");
  cmd->add_flag("--generate", in.generate, "use a seeded random graph instead");
  cmd->add_option("--n", in.n, "vertex count for --generate");
  cmd->add_option("--p", in.p, "edge probability for --generate");
  cmd->add_option("--seed", in.seed, "seed for --generate");
  cmd->add_option("--max-dim", in.max_dim,
                  "cap on simplex dimension (-1 = full complex)");
}

Graph resolve_graph(const InputOptions& in, std::string& description) {
  if (in.generate) {
    description = "erdos-renyi n=" + std::to_string(in.n) +
                  " p=" + format_double(in.p) +
                  " seed=" + std::to_string(in.seed);
    return generate_erdos_renyi(in.n, in.p, in.seed);
  }
  if (in.path.empty())
    throw std::invalid_argument("no input: give a graph file or --generate");
  description = "file " + in.path;
  return load_graph_file(in.path);
}

SimplicialComplex complex_of(const Graph& g, const InputOptions& in) {
  std::optional<int> max_dim;
  if (in.max_dim >= 0) max_dim = in.max_dim;
  return build_clique_complex(g, max_dim);
}

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

void write_manifest(const fs::path& out_dir, const std::string& command,
                    const std::vector<std::string>& argv,
                    const nlohmann::ordered_json& input,
                    const nlohmann::ordered_json& config,
                    const std::vector<std::string>& artifacts) {
  nlohmann::ordered_json m;
  m["command"] = command;
  m["argv"] = argv;
  m["input"] = input;
  m["config"] = config;
  m["out"] = out_dir.string();
  m["artifacts"] = artifacts;
  write_text_file((out_dir / "manifest.json").string(), m.dump(2) + "\n");
}

Tolerances load_tolerances() {
  if (const char* path = std::getenv("DIRACFLOW_TOL_TABLE");
      path != nullptr && *path != '\0')
    return Tolerances::from_json_file(path);
  return Tolerances::defaults();
}

std::vector<double> linspace_snapshots(int count, double t_end) {
  std::vector<double> times{0.0};
  for (int i = 1; i <= count; ++i)
    times.push_back(t_end * i / static_cast<double>(count));
  return times;
}

std::string trajectory_csv(const FlowTrajectory& traj) {
  std::string csv = "t,tr_M,d_dt_tr_M,tr_b2,spectral_drift,str_U_re,str_U_im\n";
  for (const auto& s : traj.snapshots) {
    csv += format_double(traj.time_sign * s.t);
    csv += "," + format_double(s.diag.tr_m);
    csv += "," + format_double(-s.diag.d_dt_tr_b2);
    csv += "," + format_double(s.diag.tr_b2);
    csv += "," + format_double(s.diag.spectral_drift);
    csv += "," + format_double(s.diag.str_u.real());
    csv += "," + format_double(s.diag.str_u.imag());
    csv += "\n";
  }
  return csv;
}

nlohmann::ordered_json flow_config_json(const FlowConfig& cfg,
                                        const FlowTrajectory& traj) {
  nlohmann::ordered_json j;
  j["beta"] = cfg.beta;
  j["t_end"] = cfg.t_end;
  j["dt"] = traj.dt;
  j["drift_tol"] = cfg.drift_tol;
  j["convergence_rel"] = cfg.convergence_rel;
  j["method"] =
      cfg.method == FlowMethod::rk4_full ? "rk4-full" : "rk4-blocks";
  return j;
}

const char* termination_name(Termination t) {
  switch (t) {
    case Termination::completed: return "completed";
    case Termination::converged: return "converged";
    case Termination::drift_abort: return "drift_abort";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// complex

int cmd_complex(const InputOptions& in, const std::string& out_dir,
                const std::vector<std::string>& argv) {
  std::string description;
  Graph g = resolve_graph(in, description);
  SimplicialComplex c = complex_of(g, in);

  std::cout << "input: " << description << "\n";
  std::cout << "vertices: " << g.vertex_count
            << "  edges: " << g.edge_count() << "\n";
  std::cout << "f-vector:";
  for (int f : c.f_vector()) std::cout << " " << f;
  std::cout << "\ntotal dimension v: " << c.total_dim() << "\n";
  std::cout << "euler characteristic: " << euler_characteristic(c) << "\n";
  std::cout << "clique polynomial coefficients:";
  for (int coeff : clique_polynomial(c)) std::cout << " " << coeff;
  std::cout << "\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file((dir / "complex.json").string(),
                    complex_summary_json(g, c));
    write_text_file((dir / "graph.json").string(), graph_to_json(g) + "\n");
    nlohmann::ordered_json input{{"description", description}};
    write_manifest(dir, "complex", argv, input, {},
                   {"complex.json", "graph.json"});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// flow

int cmd_flow(const InputOptions& in, FlowConfig cfg, int snapshot_count,
             const std::string& out_dir,
             const std::vector<std::string>& argv) {
  std::string description;
  Graph g = resolve_graph(in, description);
  SimplicialComplex c = complex_of(g, in);
  GradedMatrix D0 = dirac(exterior_derivative(c));

  const std::vector<double> requested =
      snapshot_count > 0 ? linspace_snapshots(snapshot_count, cfg.t_end)
                         : std::vector<double>{0.0};
  cfg.snapshot_times = requested;
  FlowTrajectory traj = run_flow(D0, cfg);

  fs::create_directories(out_dir);
  const fs::path dir(out_dir);
  std::vector<std::string> artifacts;

  write_text_file((dir / "trajectory.csv").string(), trajectory_csv(traj));
  artifacts.push_back("trajectory.csv");

  // Figure pair: tr(M) and its derivative over time.
  {
    std::vector<double> ts, tr_m, d_tr_m;
    for (const auto& s : traj.snapshots) {
      ts.push_back(s.t);
      tr_m.push_back(s.diag.tr_m);
      d_tr_m.push_back(-s.diag.d_dt_tr_b2);
    }
    write_line_plot_svg((dir / "tr_M.svg").string(), "tr(M(t))", ts, tr_m);
    write_line_plot_svg((dir / "d_dt_tr_M.svg").string(), "d/dt tr(M(t))", ts,
                        d_tr_m);
    artifacts.push_back("tr_M.svg");
    artifacts.push_back("d_dt_tr_M.svg");
  }

  // Snapshot matrices and the heatmap triple at the requested times.
  for (double t : requested) {
    const FlowState* s = nullptr;
    try {
      s = &traj.at_time(t);
    } catch (const std::invalid_argument&) {
      continue;  // beyond early termination
    }
    const std::string tag = "t" + fmt_time(t);
    const Matrix D_t = assemble_dirac(s->dec).matrix();
    write_matrix_csv((dir / ("D_" + tag + ".csv")).string(), D_t);
    write_matrix_json((dir / ("D_" + tag + ".json")).string(),
                      GradedMatrix(traj.grading, D_t));
    write_matrix_csv((dir / ("U_" + tag + ".csv")).string(), s->propagator);
    write_heatmap_svg((dir / ("re_D_" + tag + ".svg")).string(),
                      "Re D(" + fmt_time(t) + ")", D_t.real());
    write_heatmap_svg((dir / ("im_D_" + tag + ".svg")).string(),
                      "Im D(" + fmt_time(t) + ")", D_t.imag());
    write_heatmap_svg((dir / ("re_U_" + tag + ".svg")).string(),
                      "Re U(" + fmt_time(t) + ")", s->propagator.real());
    for (const char* prefix : {"D_", "U_"})
      artifacts.push_back(std::string(prefix) + tag + ".csv");
    artifacts.push_back("D_" + tag + ".json");
    for (const char* prefix : {"re_D_", "im_D_", "re_U_"})
      artifacts.push_back(std::string(prefix) + tag + ".svg");
  }

  nlohmann::ordered_json input{{"description", description}};
  write_manifest(dir, "flow", argv, input, flow_config_json(cfg, traj),
                 artifacts);

  std::cout << "termination: " << termination_name(traj.termination)
            << " at t = " << fmt_time(traj.final_time) << "\n";
  std::cout << "snapshots: " << traj.snapshots.size() << "\n";
  const auto& last = traj.snapshots.back();
  std::cout << "tr_b2 end: " << format_double(last.diag.tr_b2)
            << "  tr_M end: " << format_double(last.diag.tr_m) << "\n";
  std::cout << "outputs in " << out_dir << "\n";

  return traj.termination == Termination::drift_abort ? kExitInvariantFailure
                                                      : kExitOk;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(const InputOptions& in, FlowConfig cfg, int snapshot_count,
               bool beta_pair, const std::string& out_dir,
               const std::vector<std::string>& argv) {
  std::string description;
  Graph g = resolve_graph(in, description);
  SimplicialComplex c = complex_of(g, in);
  GradedMatrix D0 = dirac(exterior_derivative(c));

  cfg.snapshot_times = linspace_snapshots(std::max(snapshot_count, 2),
                                          cfg.t_end);
  auto [forward, backward] = run_bidirectional(D0, cfg);

  std::optional<FlowTrajectory> pair;
  if (beta_pair) {
    FlowConfig pair_cfg = cfg;
    pair_cfg.beta = cfg.beta == 0.0 ? 1.0 : 0.0;
    pair_cfg.dt = forward.dt;  // matched step so snapshots align
    pair = run_flow(D0, pair_cfg);
  }

  VerifyOptions opts;
  opts.backward = &backward;
  if (pair) opts.beta_pair = &*pair;
  opts.tol = load_tolerances();
  opts.extra_meta.emplace_back("input", description);
  InvariantReport report = verify_trajectory(forward, c, opts);

  if (forward.termination == Termination::drift_abort) {
    report.checks.push_back({"flow_termination",
                             "||L(t) - L(0)|| within drift_tol", 1.0, 0.0,
                             Verdict::fail});
    report.overall = false;
  }

  for (const auto& check : report.checks)
    std::cout << (check.verdict == Verdict::pass
                      ? "pass   "
                      : (check.verdict == Verdict::flagged ? "flagged"
                                                           : "FAIL   "))
              << "  " << check.name << "  residual=" << check.residual
              << " tol=" << check.tol << "\n";
  std::cout << "overall: " << (report.overall ? "pass" : "fail") << "\n";
  std::cout << "termination: " << termination_name(forward.termination)
            << "\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file((dir / "report.json").string(), report.to_json());
    write_text_file((dir / "trajectory.csv").string(),
                    trajectory_csv(forward));
    write_text_file((dir / "trajectory_backward.csv").string(),
                    trajectory_csv(backward));
    nlohmann::ordered_json input{{"description", description}};
    write_manifest(dir, "verify", argv, input,
                   flow_config_json(cfg, forward),
                   {"report.json", "trajectory.csv",
                    "trajectory_backward.csv"});
    std::cout << "report written to " << (dir / "report.json").string()
              << "\n";
  }
  return report.overall ? kExitOk : kExitInvariantFailure;
}

// ---------------------------------------------------------------------------
// zeta

Complex parse_complex_token(std::string tok) {
  // Accept "a", "a+bi", "a-bi" with optional trailing 'i'/'j'.
  if (tok.empty()) throw std::invalid_argument("empty value in --s");
  double re = 0.0, im = 0.0;
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < tok.size(); ++i)
    if ((tok[i] == '+' || tok[i] == '-') &&
        tok[i - 1] != 'e' && tok[i - 1] != 'E')
      split = i;
  try {
    if (split == std::string::npos) {
      re = std::stod(tok);
    } else {
      re = std::stod(tok.substr(0, split));
      std::string imag_part = tok.substr(split);
      if (!imag_part.empty() &&
          (imag_part.back() == 'i' || imag_part.back() == 'j'))
        imag_part.pop_back();
      if (imag_part == "+" || imag_part == "-") imag_part += "1";
      im = std::stod(imag_part);
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse --s value: " + tok);
  }
  return {re, im};
}

int cmd_zeta(const InputOptions& in, const std::string& s_values,
             const std::string& out_dir,
             const std::vector<std::string>& argv) {
  std::string description;
  Graph g = resolve_graph(in, description);
  SimplicialComplex c = complex_of(g, in);
  GradedMatrix D = dirac(exterior_derivative(c));
  Spectrum spec = eigen_hermitian(D, false);

  std::vector<Complex> points;
  std::stringstream ss(s_values);
  std::string tok;
  while (std::getline(ss, tok, ',')) points.push_back(parse_complex_token(tok));
  if (points.empty()) throw std::invalid_argument("--s produced no values");

  std::string csv = "s_re,s_im,zeta_re,zeta_im\n";
  for (const ZetaValue& z : zeta_table(spec, points)) {
    csv += format_double(z.s.real()) + "," + format_double(z.s.imag()) + "," +
           format_double(z.value.real()) + "," +
           format_double(z.value.imag()) + "\n";
    std::cout << "zeta(" << format_complex(z.s) << ") = "
              << format_complex(z.value) << "\n";
  }

  auto det = pseudo_determinant(spec);
  std::cout << "pseudo-determinant (signed product): "
            << format_double(det.signed_product) << "\n";
  std::cout << "pseudo-determinant (exp(-zeta'(0))): "
            << format_complex(det.zeta_based) << "\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file((dir / "zeta.csv").string(), csv);
    nlohmann::ordered_json dets;
    dets["signed_product"] = det.signed_product;
    dets["zeta_based"] = {det.zeta_based.real(), det.zeta_based.imag()};
    write_text_file((dir / "pseudo_determinant.json").string(),
                    dets.dump(2) + "\n");
    nlohmann::ordered_json input{{"description", description}};
    write_manifest(dir, "zeta", argv, input, {{"s", s_values}},
                   {"zeta.csv", "pseudo_determinant.json"});
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// circle

int cmd_circle(int n_max, double t_end, double dt, const std::string& out_dir,
               const std::vector<std::string>& argv) {
  auto traj = circle_flow(circle_init(n_max), t_end, dt);

  if (traj.status == CircleStatus::unstable) {
    std::cout << "instability (non-finite state) at t = "
              << fmt_time(traj.final_time)
              << "; retry with dt <= " << format_double(traj.suggested_dt)
              << "\n";
    return kExitInvariantFailure;
  }

  double invariant_drift = 0.0, lap_drift = 0.0;
  for (const auto& s : traj.snapshots) {
    invariant_drift = std::max(invariant_drift, s.invariant_drift);
    lap_drift = std::max(lap_drift, std::max(s.lap0_drift, s.lap1_drift));
  }
  const auto& final_state = traj.snapshots.back();

  std::string csv =
      "t,tr_M,tr_b2,invariant_drift,lap0_drift,lap1_drift,coupling_max";
  const int m = 2 * n_max + 1;
  for (int i = 0; i < m; ++i) csv += ",b_" + std::to_string(i - n_max);
  for (int i = 0; i < m; ++i) csv += ",c_" + std::to_string(i - n_max);
  for (int i = 0; i < m; ++i) csv += ",a_abs_" + std::to_string(i - n_max);
  csv += "\n";
  for (const auto& s : traj.snapshots) {
    csv += format_double(s.t) + "," + format_double(s.tr_m) + "," +
           format_double(s.tr_b2) + "," + format_double(s.invariant_drift) +
           "," + format_double(s.lap0_drift) + "," +
           format_double(s.lap1_drift) + "," + format_double(s.coupling_max);
    for (int i = 0; i < m; ++i)
      csv += "," + format_double(s.state.even_block(i, i).real());
    for (int i = 0; i < m; ++i)
      csv += "," + format_double(s.state.odd_block(i, i).real());
    for (int i = 0; i < m; ++i)
      csv += "," + format_double(std::abs(s.state.coupling(i, i)));
    csv += "\n";
  }

  const bool conserved = invariant_drift < 1e-8 && lap_drift < 1e-7;
  double interior_gap = 0.0;
  if (traj.status == CircleStatus::converged) {
    for (int i = 1; i < m - 1; ++i) {
      const double k = std::abs(i - n_max);
      interior_gap = std::max(
          interior_gap,
          std::abs(final_state.state.even_block(i, i).real() - k));
      interior_gap = std::max(
          interior_gap,
          std::abs(final_state.state.odd_block(i, i).real() + k));
    }
  }

  std::cout << "status: "
            << (traj.status == CircleStatus::converged ? "converged"
                                                       : "completed")
            << " at t = " << fmt_time(traj.final_time) << "\n";
  std::cout << "invariant drift (AC + BA): " << format_double(invariant_drift)
            << "\n";
  std::cout << "block Laplacian drift: " << format_double(lap_drift) << "\n";
  std::cout << "final max |coupling|: "
            << format_double(final_state.coupling_max) << "\n";
  if (traj.status == CircleStatus::converged)
    std::cout << "interior diagonal gap to (...,2,1,0,1,2,...): "
              << format_double(interior_gap) << "\n";

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path dir(out_dir);
    write_text_file((dir / "circle_trajectory.csv").string(), csv);
    nlohmann::ordered_json rep;
    rep["status"] = traj.status == CircleStatus::converged ? "converged"
                                                           : "completed";
    rep["invariant_drift"] = invariant_drift;
    rep["laplacian_drift"] = lap_drift;
    rep["final_coupling_max"] = final_state.coupling_max;
    rep["interior_diagonal_gap"] = interior_gap;
    rep["conserved"] = conserved;
    write_text_file((dir / "circle_report.json").string(), rep.dump(2) + "\n");
    nlohmann::ordered_json cfg;
    cfg["n_max"] = n_max;
    cfg["t_end"] = t_end;
    cfg["dt"] = dt;
    write_manifest(dir, "circle", argv, {}, cfg,
                   {"circle_trajectory.csv", "circle_report.json"});
  }
  return conserved ? kExitOk : kExitInvariantFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac operators of clique complexes and their isospectral "
               "deformation"};
  app.require_subcommand(1);
  std::vector<std::string> raw_args(argv, argv + argc);

  InputOptions in;
  std::string out_dir;

  auto* complex_cmd =
      app.add_subcommand("complex", "build a clique complex and summarize it");
  add_input_options(complex_cmd, in);
  complex_cmd->add_option("--out", out_dir, "output directory");

  FlowConfig cfg;
  cfg.t_end = 10.0;
  int snapshot_count = 20;
  std::string method = "blocks";

  auto add_flow_options = [&](CLI::App* cmd) {
    add_input_options(cmd, in);
    cmd->add_option("--beta", cfg.beta, "complex-structure parameter");
    cmd->add_option("--t-end", cfg.t_end, "integration horizon");
    cmd->add_option("--dt", cfg.dt, "fixed RK4 step (0 = automatic)");
    cmd->add_option("--snapshots", snapshot_count,
                    "number of evenly spaced snapshots (0 = only t = 0)");
    cmd->add_option("--drift-tol", cfg.drift_tol,
                    "abort threshold for ||L(t) - L(0)||");
    cmd->add_option("--method", method, "integrator: blocks | full");
  };

  auto* flow_cmd = app.add_subcommand("flow", "integrate the deformation");
  add_flow_options(flow_cmd);
  flow_cmd->add_option("--out", out_dir, "output directory")->required();

  bool beta_pair = false;
  auto* verify_cmd =
      app.add_subcommand("verify", "run every invariant check and report");
  add_flow_options(verify_cmd);
  verify_cmd->add_flag("--beta-pair", beta_pair,
                       "also integrate the other beta and compare b(t)");
  verify_cmd->add_option("--out", out_dir, "output directory");

  std::string s_values = "-4,-3,-2,-1,0.5,1,2";
  auto* zeta_cmd =
      app.add_subcommand("zeta", "Dirac zeta values and pseudo-determinants");
  add_input_options(zeta_cmd, in);
  zeta_cmd->add_option("--s", s_values,
                       "comma-separated arguments, e.g. -2,-1,0.5+1i");
  zeta_cmd->add_option("--out", out_dir, "output directory");

  int n_max = 3;
  double circle_t_end = 8.0, circle_dt = 1e-3;
  auto* circle_cmd =
      app.add_subcommand("circle", "Fourier-truncated circle deformation");
  circle_cmd->add_option("--n-max", n_max, "largest Fourier mode");
  circle_cmd->add_option("--t-end", circle_t_end, "integration horizon");
  circle_cmd->add_option("--dt", circle_dt, "fixed RK4 step");
  circle_cmd->add_option("--out", out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    cfg.method =
        method == "full" ? FlowMethod::rk4_full : FlowMethod::rk4_blocks;
    if (method != "full" && method != "blocks")
      throw std::invalid_argument("unknown --method: " + method);

    if (complex_cmd->parsed())
      return cmd_complex(in, out_dir, raw_args);
    if (flow_cmd->parsed())
      return cmd_flow(in, cfg, snapshot_count, out_dir, raw_args);
    if (verify_cmd->parsed())
      return cmd_verify(in, cfg, snapshot_count, beta_pair, out_dir, raw_args);
    if (zeta_cmd->parsed())
      return cmd_zeta(in, s_values, out_dir, raw_args);
    if (circle_cmd->parsed())
      return cmd_circle(n_max, circle_t_end, circle_dt, out_dir, raw_args);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
  return kExitUsage;
}
