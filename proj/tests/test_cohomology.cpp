#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "diracflow/cohomology.hpp"
#include "diracflow/operators.hpp"
#include "test_helpers.hpp"

using namespace diracflow;
using namespace diracflow::testing;

namespace {

GradedMatrix d_of(const Graph& g) {
  return exterior_derivative(build_clique_complex(g));
}

}  // namespace

TEST_CASE("Betti numbers of reference complexes") {
  auto k2 = betti_numbers(d_of(complete_graph(2)));
  CHECK(k2.b == std::vector<int>{1, 0});
  CHECK(k2.agrees());
  CHECK_FALSE(k2.flagged);

  auto k3 = betti_numbers(d_of(complete_graph(3)));
  CHECK(k3.b == std::vector<int>{1, 0, 0});
  CHECK(k3.agrees());

  auto edgeless = betti_numbers(d_of(make_graph(3, {})));
  CHECK(edgeless.b == std::vector<int>{3});

  // 4-cycle: one loop, no triangles.
  auto c4 = betti_numbers(d_of(cycle_graph(4)));
  CHECK(c4.b == std::vector<int>{1, 1});

  // Octahedron clique complex is a 2-sphere.
  auto oct = betti_numbers(d_of(octahedron()));
  CHECK(oct.b == std::vector<int>{1, 0, 1});
  CHECK(oct.agrees());
}

TEST_CASE("Euler-Poincare and route agreement on random graphs") {
  for (std::uint64_t seed : {1, 3, 7, 12}) {
    auto g = generate_erdos_renyi(10, 0.4, seed);
    auto c = build_clique_complex(g);
    auto bv = betti_numbers(exterior_derivative(c));
    CHECK(bv.agrees());
    CHECK_FALSE(bv.flagged);
    CHECK(alternating_sum(bv.b) == euler_characteristic(c));
    for (std::size_t p = 0; p < bv.b.size(); ++p) {
      CHECK(bv.b[p] >= 0);
      CHECK(bv.b[p] <= c.f_vector()[p]);
    }
  }
}

TEST_CASE("betti_numbers rejects operators that do not square to zero") {
  Grading g({2, 1});
  Matrix m = Matrix::Zero(3, 3);
  m(2, 0) = 1.0;
  m(0, 2) = 1.0;  // not a degree +1 operator; m^2 != 0
  CHECK_THROWS_AS(betti_numbers(GradedMatrix(g, m)), std::invalid_argument);
}

TEST_CASE("deformed Betti vectors stay constant") {
  FlowConfig cfg;
  cfg.t_end = 2.0;
  cfg.dt = 1e-3;
  cfg.snapshot_times = {0.0, 0.5, 1.0, 2.0};

  auto k2_traj = run_flow(dirac(d_of(complete_graph(2))), cfg);
  CHECK(deformed_betti(k2_traj, 0.0).b == std::vector<int>{1, 0});
  CHECK(deformed_betti(k2_traj, 1.0).b == std::vector<int>{1, 0});

  auto g = generate_erdos_renyi(10, 0.4, 3);
  auto d = d_of(g);
  auto initial = betti_numbers(d);
  auto traj = run_flow(dirac(d), cfg);
  for (double t : {0.5, 2.0}) {
    auto bv = deformed_betti(traj, t);
    if (!bv.flagged) CHECK(bv.b == initial.b);
  }
  CHECK_THROWS_AS(deformed_betti(traj, 7.5), std::invalid_argument);
}

TEST_CASE("complex split of a real operator is trivial") {
  auto d = d_of(complete_graph(3));
  auto split = complex_split(d);
  CHECK(split.delbar.max_abs() == 0.0);
  CHECK(max_abs(Matrix(split.del.matrix() - d.matrix())) == 0.0);
  CHECK(split.del_sq_residual == 0.0);
  CHECK(split.delbar_sq_residual == 0.0);
  CHECK(split.anticommutator_residual == 0.0);
}

TEST_CASE("complex structure emerges and fades along the beta flow") {
  FlowConfig cfg;
  cfg.beta = 1.0;
  cfg.t_end = 12.0;
  cfg.snapshot_times = {0.0, 0.2, 1.0};
  auto g = generate_erdos_renyi(8, 0.5, 2);
  auto traj = run_flow(dirac(d_of(g)), cfg);

  const auto& early = traj.at_time(0.2);
  auto split = complex_split(early.dec.d_part);
  CHECK(split.delbar.max_abs() > 1e-8);  // emerged
  CHECK(max_abs(Matrix(split.del.matrix() + split.delbar.matrix() -
                       early.dec.d_part.matrix())) == 0.0);
  CHECK(split.del_sq_residual < 1e-7);
  CHECK(split.delbar_sq_residual < 1e-7);
  CHECK(split.anticommutator_residual < 1e-7);

  // Cohomology is insensitive to the split pieces when the residuals pass.
  auto initial = betti_numbers(traj.snapshots.front().dec.d_part);
  auto del_betti = betti_numbers(split.del, 1e-7);
  if (!del_betti.flagged) CHECK(del_betti.b == initial.b);
  auto delbar_betti = betti_numbers(split.delbar, 1e-7);
  if (!delbar_betti.flagged) CHECK(delbar_betti.b == initial.b);

  REQUIRE(traj.termination == Termination::converged);
  const Matrix D_last = assemble_dirac(traj.back().dec).matrix();
  const double re = max_abs(Matrix(D_last.real().cast<Complex>()));
  const double im = max_abs(Matrix(D_last.imag().cast<Complex>()));
  CHECK(im / re < 0.05);  // faded

  // M = C^2 stays real for a real start.
  for (const auto& s : traj.snapshots) {
    const Matrix C = assemble_c(s.dec).matrix();
    CHECK(max_abs(Matrix((C * C).imag().cast<Complex>())) < 1e-8);
  }
}

TEST_CASE("kahler_test") {
  // Synthetic equal split: gap must vanish.
  Grading g({2, 1});
  Matrix m = Matrix::Zero(3, 3);
  m(2, 0) = Complex(1.0, 1.0);
  m(2, 1) = Complex(-1.0, -1.0);
  auto split = complex_split(GradedMatrix(g, m));
  // del and delbar differ by a factor i here, so the Dirac gap is positive
  // while the Laplacian split still holds.
  auto k = kahler_test(split);
  CHECK(k.laplacian_split_residual < 1e-12);

  ComplexSplit equal{split.del, split.del};
  auto k_eq = kahler_test(equal);
  CHECK(k_eq.gap == 0.0);

  // Real operator: delbar = 0, so the gap equals ||d + d^*||.
  auto d = d_of(complete_graph(2));
  auto real_split = complex_split(d);
  auto k_real = kahler_test(real_split);
  CHECK(k_real.gap ==
        max_abs(Matrix(d.matrix() + d.matrix().adjoint())));

  // Along a beta flow the Laplacian splits into the two pieces.
  FlowConfig cfg;
  cfg.beta = 1.0;
  cfg.t_end = 1.0;
  cfg.snapshot_times = {0.5};
  auto traj = run_flow(dirac(d_of(generate_erdos_renyi(8, 0.5, 2))), cfg);
  auto flow_split = complex_split(traj.at_time(0.5).dec.d_part);
  CHECK(kahler_test(flow_split).laplacian_split_residual < 1e-6);
}
