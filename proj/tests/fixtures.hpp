#pragma once

// The 6x6 running example: a COO list with one duplicate at (0,0) (7 then 3),
// the CSR it converts to, and the dense matrix both represent.

#include <cstdint>
#include <random>
#include <vector>

#include "coocsr/coo.hpp"
#include "coocsr/csr.hpp"
#include "coocsr/dense.hpp"

namespace fixtures {

using coocsr::CooMatrix;
using coocsr::CsrMatrix;
using coocsr::DenseMatrix;
using coocsr::Index;

inline CooMatrix<double> example_coo() {
  return {6, 6, {{{0, 0}, 7},  {{0, 0}, 3},  {{0, 4}, -2}, {{1, 0}, 3},  {{1, 1}, 9},
                 {{1, 5}, 3},  {{2, 1}, 7},  {{2, 2}, 8},  {{2, 3}, 7},  {{3, 0}, 3},
                 {{3, 2}, 8},  {{3, 3}, 7},  {{3, 4}, 5},  {{4, 1}, 8},  {{4, 3}, 9},
                 {{4, 4}, 9},  {{4, 5}, 13}, {{5, 1}, 4},  {{5, 4}, 2},  {{5, 5}, -1}}};
}

inline CsrMatrix<double> example_csr() {
  CsrMatrix<double> csr;
  csr.cols = 6;
  csr.row_ptr = {0, 2, 5, 8, 12, 16, 19};
  csr.col_ind = {0, 4, 0, 1, 5, 1, 2, 3, 0, 2, 3, 4, 1, 3, 4, 5, 1, 4, 5};
  csr.vals = {10, -2, 3, 9, 3, 7, 8, 7, 3, 8, 7, 5, 8, 9, 9, 13, 4, 2, -1};
  return csr;
}

inline DenseMatrix<double> example_dense() {
  const double rows[6][6] = {{10, 0, 0, 0, -2, 0}, {3, 9, 0, 0, 0, 3}, {0, 7, 8, 7, 0, 0},
                             {3, 0, 8, 7, 5, 0},   {0, 8, 0, 9, 9, 13}, {0, 4, 0, 0, 2, -1}};
  DenseMatrix<double> m(6, 6);
  for (Index r = 0; r < 6; ++r)
    for (Index c = 0; c < 6; ++c) m(r, c) = rows[r][c];
  return m;
}

/// Entries with its first four processed: the partially built CSR after them.
inline CsrMatrix<double> example_prefix4_csr() {
  CsrMatrix<double> csr;
  csr.cols = 6;
  csr.row_ptr = {0, 2, 3, 3, 3, 3, 3};
  csr.col_ind = {0, 4, 0};
  csr.vals = {10, -2, 3};
  return csr;
}

inline std::vector<double> random_ints(std::mt19937_64& rng, std::size_t n, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace fixtures
