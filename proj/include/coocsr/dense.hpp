#pragma once

// Plain row-major dense matrices: the semantic oracle for both sparse forms.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coocsr/coo.hpp"
#include "coocsr/errors.hpp"
#include "coocsr/scalars.hpp"

namespace coocsr {

template <Scalar T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(Index rows, Index cols)
      : rows_(rows), cols_(cols), grid_(static_cast<std::size_t>(rows * cols), T{0}) {}

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }

  T& operator()(Index r, Index c) { return grid_[offset(r, c)]; }
  T operator()(Index r, Index c) const { return grid_[offset(r, c)]; }

  T at(Index r, Index c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
      throw IndexOutOfRange("dense index (" + std::to_string(r) + "," + std::to_string(c) +
                            ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    return (*this)(r, c);
  }

  std::span<const T> grid() const noexcept { return grid_; }

 private:
  std::size_t offset(Index r, Index c) const noexcept {
    return static_cast<std::size_t>(r * cols_ + c);
  }

  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<T> grid_;
};

template <Scalar T>
bool bit_equal(const DenseMatrix<T>& a, const DenseMatrix<T>& b) noexcept {
  return a.rows() == b.rows() && a.cols() == b.cols() && bit_equal(a.grid(), b.grid());
}

/// y[r] = ((0 + m(r,0)*x[0]) + m(r,1)*x[1]) + ... over every column.
template <Scalar T>
std::vector<T> dense_spmv(const DenseMatrix<T>& m, std::span<const T> x) {
  if (static_cast<Index>(x.size()) != m.cols())
    throw DimensionMismatch("vector length " + std::to_string(x.size()) +
                            " does not match " + std::to_string(m.cols()) + " columns");
  std::vector<T> y(static_cast<std::size_t>(m.rows()), T{0});
  for (Index r = 0; r < m.rows(); ++r) {
    T acc = T{0};
    for (Index c = 0; c < m.cols(); ++c) acc = fp_add(acc, m(r, c) * x[static_cast<std::size_t>(c)]);
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

template <Scalar T>
std::vector<T> dense_spmv(const DenseMatrix<T>& m, const std::vector<T>& x) {
  return dense_spmv(m, std::span<const T>(x));
}

}  // namespace coocsr
