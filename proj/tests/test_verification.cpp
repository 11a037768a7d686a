#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "diracflow/operators.hpp"
#include "diracflow/verification.hpp"
#include "test_helpers.hpp"

using namespace diracflow;
using namespace diracflow::testing;

namespace {

GradedMatrix dirac_of(const Graph& g) {
  return dirac(exterior_derivative(build_clique_complex(g)));
}

FlowConfig standard_config(double t_end = 6.0) {
  FlowConfig cfg;
  cfg.t_end = t_end;
  cfg.dt = 2e-3;
  for (int i = 0; i <= 12; ++i)
    cfg.snapshot_times.push_back(t_end * i / 12.0);
  return cfg;
}

const CheckRecord& find_check(const InvariantReport& rep,
                              const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c;
  REQUIRE_MESSAGE(false, ("missing check: " + name).c_str());
  static CheckRecord dummy;
  return dummy;
}

}  // namespace

TEST_CASE("K2 baseline passes every check") {
  auto g = complete_graph(2);
  auto c = build_clique_complex(g);
  auto [fwd, bwd] = run_bidirectional(dirac_of(g), standard_config());
  FlowConfig beta_cfg = standard_config();
  beta_cfg.beta = 1.0;
  auto pair = run_flow(dirac_of(g), beta_cfg);

  VerifyOptions opts;
  opts.backward = &bwd;
  opts.beta_pair = &pair;
  auto report = verify_trajectory(fwd, c, opts);
  CHECK(report.overall);
  for (const auto& check : report.checks)
    CHECK_MESSAGE(check.verdict != Verdict::fail, check.name);
  CHECK(find_check(report, "time_symmetry").residual < 1e-6);
  CHECK(find_check(report, "beta_independence").residual < 1e-6);
}

TEST_CASE("beta run exercises the complex-structure checks") {
  auto g = generate_erdos_renyi(12, 0.35, 11);
  auto c = build_clique_complex(g);
  FlowConfig cfg = standard_config(12.0);
  cfg.beta = 1.0;
  auto traj = run_flow(dirac_of(g), cfg);
  auto report = verify_trajectory(traj, c);
  CHECK(report.overall);
  // The beta-specific checks must be present and green.
  for (const char* name :
       {"im_emergence", "im_fade", "split_residuals",
        "kahler_laplacian_split", "m_real"}) {
    const auto& check = find_check(report, name);
    CHECK_MESSAGE(check.verdict == Verdict::pass, name);
  }
  // str(U) is not conserved once the generator carries i beta b; the check
  // degrades to an informational flag on such runs.
  CHECK(find_check(report, "mckean_singer_nonlinear").verdict ==
        Verdict::flagged);
}

TEST_CASE("fault injection trips exactly the right checks") {
  auto g = complete_graph(3);
  auto c = build_clique_complex(g);
  auto traj = run_flow(dirac_of(g), standard_config());

  SUBCASE("corrupted propagator") {
    auto broken = traj;
    broken.snapshots.back().propagator(0, 0) += Complex(1e-3, 0.0);
    // Recompute the stored supertrace the way the flow would have.
    auto& s = broken.snapshots.back();
    Complex str = 0.0;
    for (int p = 0; p < broken.grading.degrees(); ++p) {
      const double sign = p % 2 == 0 ? 1.0 : -1.0;
      for (int i = 0; i < broken.grading.size(p); ++i) {
        const int idx = broken.grading.start(p) + i;
        str += sign * s.propagator(idx, idx);
      }
    }
    s.diag.str_u = str;
    auto report = verify_trajectory(broken, c);
    CHECK_FALSE(report.overall);
    CHECK(find_check(report, "unitarity").verdict == Verdict::fail);
    CHECK(find_check(report, "mckean_singer_nonlinear").verdict ==
          Verdict::fail);
    CHECK(find_check(report, "isospectrality").verdict == Verdict::pass);
  }

  SUBCASE("corrupted diagonal part breaks the Laplacian invariance") {
    auto broken = traj;
    broken.snapshots.back().dec.b_part.matrix()(0, 0) += 1e-3;
    auto report = verify_trajectory(broken, c);
    CHECK_FALSE(report.overall);
    CHECK(find_check(report, "l_invariance").verdict == Verdict::fail);
    CHECK(find_check(report, "isospectrality").verdict == Verdict::fail);
  }

  SUBCASE("non-Hermitian diagonal part") {
    auto broken = traj;
    broken.snapshots.back().dec.b_part.matrix()(0, 1) += Complex(0.0, 1e-3);
    auto report = verify_trajectory(broken, c);
    CHECK_FALSE(report.overall);
    CHECK(find_check(report, "hermiticity").verdict == Verdict::fail);
    CHECK(find_check(report, "degree_structure").verdict == Verdict::fail);
  }

  SUBCASE("monotonicity violation") {
    auto broken = traj;
    broken.snapshots.back().diag.tr_b2 =
        broken.snapshots.front().diag.tr_b2 - 1e-3;
    auto report = verify_trajectory(broken, c);
    CHECK_FALSE(report.overall);
    CHECK(find_check(report, "monotone_traces").verdict == Verdict::fail);
  }
}

TEST_CASE("reports are byte-identical across runs") {
  auto g = complete_graph(3);
  auto c = build_clique_complex(g);
  auto t1 = run_flow(dirac_of(g), standard_config());
  auto t2 = run_flow(dirac_of(g), standard_config());
  auto r1 = verify_trajectory(t1, c);
  auto r2 = verify_trajectory(t2, c);
  CHECK(r1.to_json() == r2.to_json());
  CHECK(r1.to_json().find("\"overall\": \"pass\"") != std::string::npos);
}

TEST_CASE("tolerance table round trip") {
  Tolerances t = Tolerances::defaults();
  CHECK(t.named().size() == 20);
  // Every named entry corresponds to a real member with its default.
  for (const auto& [name, value] : t.named()) CHECK(value > 0.0);
}

TEST_CASE("supersymmetry breaking report") {
  auto g = complete_graph(2);
  FlowConfig cfg;
  cfg.t_end = 8.0;
  cfg.dt = 1e-3;
  cfg.snapshot_times = {0.0, 0.5, 1.0, 2.0};
  auto traj = run_flow(dirac_of(g), cfg);
  REQUIRE(traj.termination == Termination::converged);
  auto spec0 = eigen_hermitian(dirac_of(g));
  auto rep = supersymmetry_breaking_report(traj, spec0);
  REQUIRE(!rep.series.empty());
  CHECK(rep.max_cosine_t0 < 1e-10);
  CHECK(rep.min_cosine_final > 0.99);
  // Cosines grow from orthogonal toward parallel.
  for (const auto& s : rep.series) {
    CHECK(s.cosine.back() >
          s.cosine[std::min<std::size_t>(1, s.cosine.size() - 1)]);
  }

  Spectrum no_vectors = eigen_hermitian(dirac_of(g), false);
  CHECK_THROWS_AS(supersymmetry_breaking_report(traj, no_vectors),
                  std::invalid_argument);
}
