#pragma once

// Compressed-sparse-row matrices.

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coocsr/coo.hpp"
#include "coocsr/dense.hpp"
#include "coocsr/errors.hpp"
#include "coocsr/scalars.hpp"
#include "coocsr/verdict.hpp"

namespace coocsr {

/// Row r occupies slots [row_ptr[r], row_ptr[r+1]) of vals/col_ind.
/// The row count is derived: row_ptr.size() - 1.
template <Scalar T>
struct CsrMatrix {
  Index cols = 0;
  std::vector<T> vals;
  std::vector<Index> col_ind;
  std::vector<Index> row_ptr{0};

  Index rows() const noexcept { return static_cast<Index>(row_ptr.size()) - 1; }
  Index nnz() const noexcept { return static_cast<Index>(vals.size()); }
};

template <Scalar T>
bool bit_equal(const CsrMatrix<T>& a, const CsrMatrix<T>& b) noexcept {
  return a.cols == b.cols && a.col_ind == b.col_ind && a.row_ptr == b.row_ptr &&
         bit_equal(std::span<const T>(a.vals), std::span<const T>(b.vals));
}

/// Checks each well-formedness clause in turn and names the first one violated.
template <Scalar T>
Verdict csr_wellformed_report(const CsrMatrix<T>& csr, Index index_bound = default_index_bound) {
  const Index rows = csr.rows();
  if (rows < 0) return Verdict::fail("CSR_wf_rows", "row_ptr is empty");
  if (csr.cols < 0) return Verdict::fail("CSR_wf_cols", "cols = " + std::to_string(csr.cols));
  if (csr.vals.size() != csr.col_ind.size())
    return Verdict::fail("CSR_wf_vals", "len(vals) = " + std::to_string(csr.vals.size()) +
                                            ", len(col_ind) = " + std::to_string(csr.col_ind.size()));
  if (csr.nnz() != csr.row_ptr[static_cast<std::size_t>(rows)])
    return Verdict::fail("CSR_wf_vals'", "len(vals) = " + std::to_string(csr.vals.size()) +
                                             ", row_ptr[rows] = " + std::to_string(csr.row_ptr.back()));

  Index prev = 0;
  for (std::size_t k = 0; k < csr.row_ptr.size(); ++k) {
    if (csr.row_ptr[k] < prev)
      return Verdict::fail("CSR_wf_sorted", "row_ptr[" + std::to_string(k) + "] = " +
                                                std::to_string(csr.row_ptr[k]) + " < " + std::to_string(prev));
    prev = csr.row_ptr[k];
  }
  if (prev > index_bound)
    return Verdict::fail("CSR_wf_sorted", "row_ptr exceeds index bound " + std::to_string(index_bound));

  for (Index r = 0; r < rows; ++r) {
    Index last = -1;
    const auto begin = csr.row_ptr[static_cast<std::size_t>(r)];
    const auto end = csr.row_ptr[static_cast<std::size_t>(r + 1)];
    for (Index k = begin; k < end; ++k) {
      const Index c = csr.col_ind[static_cast<std::size_t>(k)];
      if (c <= last)
        return Verdict::fail("CSR_wf_rowsorted", "row " + std::to_string(r) + " slot " +
                                                     std::to_string(k) + ": column " + std::to_string(c) +
                                                     " after " + std::to_string(last));
      last = c;
    }
    if (last >= csr.cols)
      return Verdict::fail("CSR_wf_rowsorted", "row " + std::to_string(r) + ": column " +
                                                   std::to_string(last) + " >= cols " +
                                                   std::to_string(csr.cols));
  }
  return Verdict::pass();
}

template <Scalar T>
bool csr_wellformed(const CsrMatrix<T>& csr, Index index_bound = default_index_bound) {
  return csr_wellformed_report(csr, index_bound).ok;
}

/// Stored value at (r, c), or +0.0 when the row has no slot for column c.
template <Scalar T>
T csr_get(const CsrMatrix<T>& csr, Index r, Index c) {
  if (r < 0 || r >= csr.rows() || c < 0 || c >= csr.cols)
    throw IndexOutOfRange("csr index (" + std::to_string(r) + "," + std::to_string(c) + ") outside " +
                          std::to_string(csr.rows()) + "x" + std::to_string(csr.cols));
  const auto first = csr.col_ind.begin() + csr.row_ptr[static_cast<std::size_t>(r)];
  const auto last = csr.col_ind.begin() + csr.row_ptr[static_cast<std::size_t>(r + 1)];
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return T{0};
  return csr.vals[static_cast<std::size_t>(it - csr.col_ind.begin())];
}

template <Scalar T>
DenseMatrix<T> csr_to_dense(const CsrMatrix<T>& csr) {
  DenseMatrix<T> m(csr.rows(), csr.cols);
  for (Index r = 0; r < csr.rows(); ++r)
    for (Index k = csr.row_ptr[static_cast<std::size_t>(r)]; k < csr.row_ptr[static_cast<std::size_t>(r + 1)]; ++k)
      m(r, csr.col_ind[static_cast<std::size_t>(k)]) = csr.vals[static_cast<std::size_t>(k)];
  return m;
}

/// y = A x, each row accumulated left to right over its stored slots.
template <Scalar T>
std::vector<T> csr_spmv(const CsrMatrix<T>& csr, std::span<const T> x) {
  if (static_cast<Index>(x.size()) != csr.cols)
    throw DimensionMismatch("vector length " + std::to_string(x.size()) +
                            " does not match " + std::to_string(csr.cols) + " columns");
  std::vector<T> y(static_cast<std::size_t>(csr.rows()), T{0});
  for (Index r = 0; r < csr.rows(); ++r) {
    T acc = T{0};
    for (Index k = csr.row_ptr[static_cast<std::size_t>(r)]; k < csr.row_ptr[static_cast<std::size_t>(r + 1)]; ++k) {
      const auto slot = static_cast<std::size_t>(k);
      acc = fp_add(acc, csr.vals[slot] * x[static_cast<std::size_t>(csr.col_ind[slot])]);
    }
    y[static_cast<std::size_t>(r)] = acc;
  }
  return y;
}

template <Scalar T>
std::vector<T> csr_spmv(const CsrMatrix<T>& csr, const std::vector<T>& x) {
  return csr_spmv(csr, std::span<const T>(x));
}

}  // namespace coocsr
