#include "netcast/matrix.hpp"

#include "check.hpp"

#include <cmath>

namespace netcast {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    detail::domain_error("matrix ", rows, "x", cols, " needs ", rows * cols, " values, got ",
                         data_.size());
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      t(c, r) = (*this)(r, c);
  return t;
}

double Matrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : data_)
    m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> multiply(const Matrix& w, std::span<const double> x) {
  if (x.size() != w.cols())
    detail::domain_error("matrix has ", w.cols(), " columns but vector has ", x.size(), " entries");
  std::vector<double> y(w.rows(), 0.0);
  for (std::size_t m = 0; m < w.rows(); ++m) {
    const auto r = w.row(m);
    double acc = 0.0;
    for (std::size_t n = 0; n < r.size(); ++n)
      acc += r[n] * x[n];
    y[m] = acc;
  }
  return y;
}

} // namespace netcast
