#include "diracflow/graded_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace diracflow {

Grading::Grading(std::vector<int> f_vector) : f_(std::move(f_vector)) {
  offsets_.push_back(0);
  for (int c : f_) {
    if (c < 0) throw std::invalid_argument("grading: negative block size");
    offsets_.push_back(offsets_.back() + c);
  }
}

int Grading::degree_of(int index) const {
  if (index < 0 || index >= total())
    throw std::out_of_range("grading: index out of range");
  for (int p = 0; p < degrees(); ++p)
    if (index < offsets_[p + 1]) return p;
  return degrees() - 1;
}

GradedMatrix::GradedMatrix(Grading grading, Matrix entries)
    : grading_(std::move(grading)), m_(std::move(entries)) {
  if (m_.rows() != m_.cols() || m_.rows() != grading_.total())
    throw std::invalid_argument("graded matrix: shape does not match grading");
}

GradedMatrix GradedMatrix::zero(const Grading& g) {
  return {g, Matrix::Zero(g.total(), g.total())};
}

Eigen::Block<Matrix> GradedMatrix::block(int q, int p) {
  return m_.block(grading_.start(q), grading_.start(p), grading_.size(q),
                  grading_.size(p));
}

Eigen::Block<const Matrix> GradedMatrix::block(int q, int p) const {
  return m_.block(grading_.start(q), grading_.start(p), grading_.size(q),
                  grading_.size(p));
}

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double GradedMatrix::max_abs() const { return diracflow::max_abs(m_); }

double GradedMatrix::hermiticity_residual() const {
  return diracflow::max_abs(m_ - m_.adjoint());
}

double GradedMatrix::off_support_residual(
    std::initializer_list<int> shifts) const {
  double residual = 0.0;
  const int degs = grading_.degrees();
  for (int q = 0; q < degs; ++q)
    for (int p = 0; p < degs; ++p) {
      if (std::find(shifts.begin(), shifts.end(), q - p) != shifts.end())
        continue;
      const auto blk = block(q, p);
      if (blk.size() > 0)
        residual = std::max(residual, blk.cwiseAbs().maxCoeff());
    }
  return residual;
}

}  // namespace diracflow
