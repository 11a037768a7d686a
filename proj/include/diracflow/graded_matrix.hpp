#pragma once

#include <Eigen/Dense>
#include <complex>
#include <initializer_list>
#include <vector>

namespace diracflow {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

/// Partition of 0..total-1 into consecutive blocks, one per form degree.
class Grading {
 public:
  Grading() = default;
  explicit Grading(std::vector<int> f_vector);

  int degrees() const { return static_cast<int>(f_.size()); }
  int total() const { return offsets_.empty() ? 0 : offsets_.back(); }
  int start(int p) const { return offsets_.at(p); }
  int size(int p) const { return f_.at(p); }
  int degree_of(int index) const;
  const std::vector<int>& f_vector() const { return f_; }

  bool operator==(const Grading&) const = default;

 private:
  std::vector<int> f_;
  std::vector<int> offsets_;  // prefix sums, size degrees()+1
};

/// Square complex matrix over the direct sum of the p-form spaces, with
/// block(q, p) addressing the sub-matrix that maps p-forms to q-forms.
class GradedMatrix {
 public:
  GradedMatrix() = default;
  GradedMatrix(Grading grading, Matrix entries);

  static GradedMatrix zero(const Grading& g);

  const Grading& grading() const { return grading_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  Matrix& matrix() { return m_; }
  const Matrix& matrix() const { return m_; }

  Eigen::Block<Matrix> block(int q, int p);
  Eigen::Block<const Matrix> block(int q, int p) const;

  GradedMatrix adjoint() const { return {grading_, m_.adjoint()}; }

  double max_abs() const;
  /// max |A - A^*| over entries.
  double hermiticity_residual() const;
  /// max |entry| outside the blocks whose degree shift q-p is listed.
  double off_support_residual(std::initializer_list<int> shifts) const;

 private:
  Grading grading_;
  Matrix m_;
};

double max_abs(const Matrix& m);

}  // namespace diracflow
