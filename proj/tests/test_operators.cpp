#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "diracflow/operators.hpp"
#include "diracflow/spectral.hpp"
#include "test_helpers.hpp"

using namespace diracflow;
using namespace diracflow::testing;

namespace {

GradedMatrix k2_dirac() {
  return dirac(exterior_derivative(build_clique_complex(complete_graph(2))));
}

// The 3x3 operators of the two-point graph, entered by hand as the fixture
// every K2 assertion is checked against.
Matrix k2_dirac_reference() {
  Matrix D(3, 3);
  D << 0, 0, -1, 0, 0, 1, -1, 1, 0;
  return D;
}

Matrix k2_laplacian_reference() {
  Matrix L(3, 3);
  L << 1, -1, 0, -1, 1, 0, 0, 0, 2;
  return L;
}

}  // namespace

TEST_CASE("K2 exterior derivative block") {
  auto c = build_clique_complex(complete_graph(2));
  auto d = exterior_derivative(c);
  REQUIRE(d.dim() == 3);
  CHECK(d.block(1, 0)(0, 0) == Complex(-1.0, 0.0));
  CHECK(d.block(1, 0)(0, 1) == Complex(1.0, 0.0));
  CHECK(d.off_support_residual({+1}) == 0.0);
}

TEST_CASE("single vertex gives the zero operator") {
  auto d = exterior_derivative(build_clique_complex(complete_graph(1)));
  CHECK(d.dim() == 1);
  CHECK(d.max_abs() == 0.0);
}

TEST_CASE("d composed with d vanishes exactly") {
  for (const Graph& g :
       {complete_graph(3), octahedron(), generate_erdos_renyi(9, 0.5, 4)}) {
    auto d = exterior_derivative(build_clique_complex(g));
    CHECK(max_abs(Matrix(d.matrix() * d.matrix())) == 0.0);
  }
}

TEST_CASE("K2 Dirac operator matches the fixture") {
  auto D = k2_dirac();
  CHECK(max_abs(Matrix(D.matrix() - k2_dirac_reference())) == 0.0);
  auto spec = eigen_hermitian(D, false);
  CHECK(spec.eigenvalues(0) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
  CHECK(spec.eigenvalues(1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("Dirac operators are self-adjoint with zero diagonal blocks") {
  auto d = exterior_derivative(build_clique_complex(generate_erdos_renyi(8, 0.5, 2)));
  auto D = dirac(d);
  CHECK(D.hermiticity_residual() == 0.0);
  CHECK(D.off_support_residual({-1, +1}) == 0.0);
}

TEST_CASE("dirac rejects content outside degree +1") {
  auto D = k2_dirac();
  CHECK_THROWS_AS(dirac(D), std::invalid_argument);
}

TEST_CASE("K2 Laplacian") {
  auto L = laplacian(k2_dirac());
  CHECK(max_abs(Matrix(L.matrix() - k2_laplacian_reference())) < 1e-15);
  CHECK(L.matrix().trace().real() == doctest::Approx(4.0));
  auto spec = eigen_hermitian(L, false);
  CHECK(spec.eigenvalues(0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(1) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(spec.eigenvalues(2) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Laplacian is block diagonal and positive semidefinite") {
  auto c = build_clique_complex(generate_erdos_renyi(9, 0.45, 6));
  auto L = laplacian(dirac(exterior_derivative(c)));
  CHECK(L.off_support_residual({0}) < 1e-14);
  auto spec = eigen_hermitian(L, false);
  CHECK(spec.eigenvalues.minCoeff() > -1e-10);
}

TEST_CASE("parity") {
  auto c = build_clique_complex(complete_graph(2));
  auto P = parity(c);
  CHECK(P.matrix()(0, 0).real() == 1.0);
  CHECK(P.matrix()(1, 1).real() == 1.0);
  CHECK(P.matrix()(2, 2).real() == -1.0);
  CHECK(max_abs(Matrix(P.matrix() * P.matrix() -
                       Matrix::Identity(3, 3))) == 0.0);

  for (const Graph& g : {complete_graph(3), generate_erdos_renyi(8, 0.5, 7)}) {
    auto cc = build_clique_complex(g);
    auto PP = parity(cc);
    auto D = dirac(exterior_derivative(cc));
    CHECK(max_abs(Matrix(PP.matrix() * D.matrix() +
                         D.matrix() * PP.matrix())) == 0.0);
    CHECK(PP.matrix().trace().real() ==
          doctest::Approx(euler_characteristic(cc)));
  }
}

TEST_CASE("supertrace identities on K2") {
  auto c = build_clique_complex(complete_graph(2));
  auto P = parity(c);
  Grading g(c.f_vector());
  GradedMatrix I(g, Matrix::Identity(3, 3));
  CHECK(supertrace(P, I).real() == doctest::Approx(1.0));

  // str(L^n) = 0 via explicit powers of the hand-entered Laplacian.
  Matrix L = k2_laplacian_reference();
  Matrix Ln = Matrix::Identity(3, 3);
  for (int n = 1; n <= 4; ++n) {
    Ln = Ln * L;
    CHECK(std::abs(supertrace(P, GradedMatrix(g, Ln))) < 1e-12);
  }

  // str(exp(-L t)) at t = 1: vertex block contributes 1 + e^{-2}, the edge
  // slot e^{-2}, so the supertrace collapses to chi = 1.
  Eigen::SelfAdjointEigenSolver<Matrix> es(L);
  Matrix heat = es.eigenvectors() *
                (-es.eigenvalues().array()).exp().matrix().asDiagonal() *
                es.eigenvectors().adjoint();
  CHECK(supertrace(P, GradedMatrix(g, heat)).real() ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("supertrace of Laplacian powers vanishes on random complexes") {
  auto c = build_clique_complex(generate_erdos_renyi(9, 0.5, 8));
  Grading g(c.f_vector());
  auto P = parity(c);
  auto L = laplacian(dirac(exterior_derivative(c)));
  Matrix Ln = Matrix::Identity(L.dim(), L.dim());
  for (int n = 1; n <= 4; ++n) {
    Ln = Ln * L.matrix();
    CHECK(std::abs(supertrace(P, GradedMatrix(g, Ln))) < 1e-8);
  }
}

TEST_CASE("supertrace dimension mismatch") {
  auto P2 = parity(build_clique_complex(complete_graph(2)));
  auto P3 = parity(build_clique_complex(complete_graph(3)));
  CHECK_THROWS_AS(supertrace(P2, P3), std::invalid_argument);
}

TEST_CASE("extract_blocks on the undeformed operator") {
  auto D = k2_dirac();
  auto ext = extract_blocks(D);
  CHECK(ext.residual == 0.0);
  CHECK(ext.decomposition.b_part.max_abs() == 0.0);
  CHECK(max_abs(Matrix(ext.decomposition.d_part.matrix() +
                       ext.decomposition.d_part.matrix().adjoint() -
                       D.matrix())) == 0.0);
}

TEST_CASE("extract_blocks recovers the deformed K2 shape") {
  // D = [[b, c, -d], [c, b, d], [-d, d, e]] with c = -b, e = -2b.
  const double b = 0.3, d = 0.8;
  Matrix D(3, 3);
  D << b, -b, -d, -b, b, d, -d, d, -2 * b;
  Grading g({2, 1});
  auto ext = extract_blocks(GradedMatrix(g, D));
  CHECK(ext.residual == 0.0);
  CHECK(ext.decomposition.b_part.matrix()(0, 0).real() == doctest::Approx(b));
  CHECK(ext.decomposition.b_part.matrix()(0, 1).real() == doctest::Approx(-b));
  CHECK(ext.decomposition.b_part.matrix()(2, 2).real() ==
        doctest::Approx(-2 * b));
  CHECK(ext.decomposition.d_part.matrix()(2, 0).real() == doctest::Approx(-d));
  // Reassembly reproduces D exactly when the residual vanishes.
  CHECK(max_abs(Matrix(assemble_dirac(ext.decomposition).matrix() - D)) ==
        0.0);
}

TEST_CASE("extract_blocks rejects non-Hermitian input") {
  Grading g({2, 1});
  Matrix M = Matrix::Zero(3, 3);
  M(0, 2) = 1.0;  // no matching adjoint entry
  CHECK_THROWS_AS(extract_blocks(GradedMatrix(g, M)), std::invalid_argument);
}

TEST_CASE("b_operator is anti-Hermitian and squares to -L at t = 0") {
  for (const Graph& g_in :
       {complete_graph(2), complete_graph(3), generate_erdos_renyi(8, 0.5, 11)}) {
    auto c = build_clique_complex(g_in);
    auto D = dirac(exterior_derivative(c));
    for (double beta : {0.0, 1.0}) {
      auto dec = extract_blocks(D, beta).decomposition;
      auto B = b_operator(dec);
      CHECK(max_abs(Matrix(B.matrix() + B.matrix().adjoint())) == 0.0);
      // (d - d^*)^2 = -(d d^* + d^* d) regardless of beta while b = 0.
      auto L = laplacian(D);
      CHECK(max_abs(Matrix(B.matrix() * B.matrix() + L.matrix())) < 1e-14);
    }
  }
}

TEST_CASE("K2 generator magnitudes match the fixture pattern") {
  auto dec = extract_blocks(k2_dirac()).decomposition;
  auto B = b_operator(dec);
  Matrix expected(3, 3);  // entries of d - d^* for the stored sign convention
  expected << 0, 0, 1, 0, 0, -1, -1, 1, 0;
  CHECK(max_abs(Matrix(B.matrix() - expected)) == 0.0);
}
