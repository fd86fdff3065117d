#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace thermo {

using Vector = std::vector<double>;

/// Small dense row-major matrix. The systems handled here have a handful of
/// states, so no BLAS is involved.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  Matrix transposed() const;
  std::vector<std::vector<double>> to_rows() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// y = A x
Vector multiply(const Matrix& a, std::span<const double> x);
/// y = x^T A
Vector multiply(std::span<const double> x, const Matrix& a);

double max_abs_difference(std::span<const double> a, std::span<const double> b);

}  // namespace thermo
