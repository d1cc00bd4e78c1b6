#ifndef CPRLAB_MATRIX_HPP
#define CPRLAB_MATRIX_HPP

#include "cprlab/rng.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace cprlab {

/// Dense row-major matrix of doubles. The universal carrier for parameters,
/// gradients, and activations.
class DenseMatrix {
public:
  /// Empty placeholder (0x0); every sized constructor enforces rows,cols >= 1.
  DenseMatrix() = default;

  /// Matrix filled with a constant. Throws DimensionError on a zero dimension.
  DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  bool same_shape(const DenseMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  bool all_finite() const;

  bool operator==(const DenseMatrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// result[i] = a * x[i] + y[i]. Throws DimensionError on shape mismatch.
DenseMatrix axpy(double a, const DenseMatrix& x, const DenseMatrix& y);

/// y[i] += a * x[i] in place.
void axpy_inplace(double a, const DenseMatrix& x, DenseMatrix& y);

/// Raw sum of squares (no 1/2 factor; the regularizer adds it).
double sum_squares(const DenseMatrix& x);

/// Entries i.i.d. uniform on [-half_width, +half_width], drawn in row-major
/// order. Throws ParameterError when half_width <= 0.
DenseMatrix uniform_matrix(std::size_t rows, std::size_t cols, double half_width, Rng& rng);

/// Entries i.i.d. normal(0, stddev^2), drawn in row-major order.
DenseMatrix normal_matrix(std::size_t rows, std::size_t cols, double stddev, Rng& rng);

// Shape-checked products used by the models.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);          // a (m,k) * b (k,n)
DenseMatrix matmul_trans_a(const DenseMatrix& a, const DenseMatrix& b);  // a^T (k,m) * b (k,n)
DenseMatrix matmul_trans_b(const DenseMatrix& a, const DenseMatrix& b);  // a (m,k) * b^T (n,k)

} // namespace cprlab

#endif
