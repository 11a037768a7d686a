#pragma once

#include <utility>
#include <vector>

#include "diracflow/graded_matrix.hpp"

namespace diracflow {

/// Fourier truncation (modes -n_max..n_max) of the deformed circle operator
/// [[even_block, coupling], [coupling^*, odd_block]]: coupling plays the role
/// of the derivative part, the two Hermitian blocks the diagonal part.
struct TruncatedCircle {
  int n_max = 0;
  Matrix coupling;    // A; initially Diag(i k)
  Matrix even_block;  // B; initially 0
  Matrix odd_block;   // C; initially 0

  int modes() const { return 2 * n_max + 1; }
};

/// Throws std::invalid_argument when n_max < 1.
TruncatedCircle circle_init(int n_max);

/// coupling * odd_block + even_block * coupling; zero initially and conserved
/// along the flow.
Matrix circle_invariant(const TruncatedCircle& tc);

/// (even_block^2 + A A^*, odd_block^2 + A^* A): the two Laplacian blocks,
/// constant along the flow.
std::pair<Matrix, Matrix> circle_block_laplacian(const TruncatedCircle& tc);

enum class CircleStatus { completed, converged, unstable };

struct CircleSnapshot {
  double t = 0.0;
  TruncatedCircle state;
  double invariant_drift = 0.0;  // ||AC + BA - (AC + BA)(0)||_max
  double lap0_drift = 0.0;
  double lap1_drift = 0.0;
  double coupling_max = 0.0;     // ||A||_max
  double tr_m = 0.0;             // 2 tr(A A^*)
  double tr_b2 = 0.0;            // tr(B^2 + C^2)
};

struct CircleTrajectory {
  int n_max = 0;
  double dt = 0.0;
  std::vector<CircleSnapshot> snapshots;
  CircleStatus status = CircleStatus::completed;
  /// Populated when status == unstable (NaN encountered); try this step.
  double suggested_dt = 0.0;
  double final_time = 0.0;
};

/// RK4 on B' = 2 A A^*, A' = 2 A C, C' = -2 A^* A. Stops early once
/// 2 tr(A A^*) falls below 1e-6 of the initial total Laplacian trace.
/// snapshot_count interior snapshots are spread evenly; the final state is
/// always recorded.
CircleTrajectory circle_flow(const TruncatedCircle& start, double t_end,
                             double dt, int snapshot_count = 50);

}  // namespace diracflow
