#pragma once

// Differential fuzzing: generate, convert with a trace, replay the trace, and
// compare against the dense oracle. Failing inputs are shrunk by dropping
// entries and trimming dimensions while the failure persists.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>

#include "coocsr/convert.hpp"
#include "coocsr/coo.hpp"
#include "coocsr/csr.hpp"
#include "coocsr/random.hpp"
#include "coocsr/relations.hpp"
#include "coocsr/verdict.hpp"

namespace coocsr {

/// Runs the whole check pipeline on one input. In the exact regime the output
/// must equal the appearance-order dense matrix bit for bit; otherwise every
/// entry must be a member of its duplicates' sum set.
template <Scalar T>
Verdict check_conversion(const CooMatrix<T>& coo, ValueRegime regime, const CheckOptions& opts = {},
                         detail::Fault fault = detail::Fault::none) {
  ConversionResult<T> res;
  Trace<T> partial;
  const TraceSink<T> keep = [&](const TraceEvent<T>& ev) { partial.push_back(ev); };
  try {
    res = detail::convert<T>(coo, ConvertOptions{opts.index_bound}, true, &keep, fault);
  } catch (const std::exception& e) {
    // Replay what was recorded before the abort; a checker rejection names
    // the step that went wrong, which the exception alone does not.
    if (!partial.empty()) {
      auto v = check_trace(coo, partial, opts);
      if (!v && v.clause != "trace_shape") {
        v.detail += " (converter then aborted: " + std::string(e.what()) + ")";
        return v;
      }
    }
    return Verdict::fail("converter_exception", e.what());
  }
  if (auto v = check_trace(coo, res.trace, opts); !v) return v;
  if (auto v = csr_wellformed_report(res.csr, opts.index_bound); !v) return v;
  if (res.csr.row_ptr.front() != 0) return Verdict::fail("row_ptr_origin", "row_ptr[0] != 0");
  if (!coo_equiv(coo, res.sorted)) return Verdict::fail("coo_matrix_equiv");
  if (auto v = check_coo_csr(res.sorted, res.csr, opts); !v) return v;
  const auto dense = csr_to_dense(res.csr);
  if (regime == ValueRegime::exact_ints) {
    if (!bit_equal(dense, coo_to_dense_appearance_order(coo)))
      return Verdict::fail("dense_oracle", "output differs from the appearance-order dense matrix");
    return Verdict::pass();
  }
  return check_coo_to_matrix(coo, dense, opts);
}

/// Greedily removes entries, then trims trailing rows and columns, keeping
/// each change only if `fails` still holds.
template <Scalar T>
CooMatrix<T> shrink(CooMatrix<T> coo, const std::function<bool(const CooMatrix<T>&)>& fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t k = 0; k < coo.entries.size();) {
      CooMatrix<T> cand = coo;
      cand.entries.erase(cand.entries.begin() + static_cast<std::ptrdiff_t>(k));
      if (fails(cand)) {
        coo = std::move(cand);
        progress = true;
      } else {
        ++k;
      }
    }
    Index max_row = -1, max_col = -1;
    for (const auto& e : coo.entries) {
      max_row = std::max(max_row, e.coord.row);
      max_col = std::max(max_col, e.coord.col);
    }
    for (auto dim : {&CooMatrix<T>::rows, &CooMatrix<T>::cols}) {
      const Index floor = dim == &CooMatrix<T>::rows ? max_row + 1 : max_col + 1;
      while (coo.*dim > floor) {
        CooMatrix<T> cand = coo;
        --(cand.*dim);
        if (!fails(cand)) break;
        coo = std::move(cand);
        progress = true;
      }
    }
  }
  return coo;
}

struct FuzzFailure {
  std::size_t case_index = 0;
  std::uint64_t case_seed = 0;
  Verdict verdict;
};

template <Scalar T>
struct FuzzReport {
  std::size_t cases_run = 0;
  std::optional<FuzzFailure> failure;
  CooMatrix<T> original;
  CooMatrix<T> minimized;
};

/// Runs `cases` seeded cases and stops at the first failure, which is shrunk.
template <Scalar T>
FuzzReport<T> fuzz(std::size_t cases, std::uint64_t seed, const CaseShape& shape, const CheckOptions& opts = {},
                   detail::Fault fault = detail::Fault::none) {
  FuzzReport<T> report;
  for (std::size_t k = 0; k < cases; ++k) {
    const auto case_seed = mix_seed(seed, k);
    auto coo = random_case<T>(case_seed, shape);
    ++report.cases_run;
    auto v = check_conversion(coo, shape.regime, opts, fault);
    if (v) continue;
    report.failure = FuzzFailure{k, case_seed, v};
    report.original = coo;
    report.minimized = shrink<T>(std::move(coo), [&](const CooMatrix<T>& c) {
      return !check_conversion(c, shape.regime, opts, fault).ok;
    });
    break;
  }
  return report;
}

}  // namespace coocsr
