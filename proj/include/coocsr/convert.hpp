#pragma once

// COO -> CSR conversion: stable sort, then fill the three CSR arrays left to
// right, folding duplicates into the slot of the previous entry. The loop is
// written step for step so that every state change can be reported as a trace
// event and replayed by the invariant checkers in relations.hpp.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coocsr/coo.hpp"
#include "coocsr/csr.hpp"
#include "coocsr/errors.hpp"
#include "coocsr/scalars.hpp"

namespace coocsr {

/// Cursor values and partially filled output buffers. An empty optional is a
/// slot that has not been written yet.
template <Scalar T>
struct ConversionState {
  Index i = 0;   // next entry to process
  Index r = -1;  // last row whose row_ptr slot was written
  Index c = 0;   // column of the last emitted slot
  Index l = 0;   // slots emitted so far
  std::vector<std::optional<Index>> row_ptr;
  std::vector<std::optional<Index>> col_ind;
  std::vector<std::optional<T>> vals;
};

template <Scalar T>
bool same_state(const ConversionState<T>& a, const ConversionState<T>& b) noexcept {
  if (a.i != b.i || a.r != b.r || a.c != b.c || a.l != b.l) return false;
  if (a.row_ptr != b.row_ptr || a.col_ind != b.col_ind || a.vals.size() != b.vals.size())
    return false;
  for (std::size_t k = 0; k < a.vals.size(); ++k) {
    if (a.vals[k].has_value() != b.vals[k].has_value()) return false;
    if (a.vals[k] && !bit_equal(*a.vals[k], *b.vals[k])) return false;
  }
  return true;
}

enum class StepKind { init, duplicate, new_col, skip_row, new_row, last_rows, done };

constexpr std::string_view to_string(StepKind k) noexcept {
  switch (k) {
    case StepKind::init: return "Init";
    case StepKind::duplicate: return "Duplicate";
    case StepKind::new_col: return "NewCol";
    case StepKind::skip_row: return "SkipRow";
    case StepKind::new_row: return "NewRow";
    case StepKind::last_rows: return "LastRows";
    case StepKind::done: return "Done";
  }
  return "?";
}

template <Scalar T>
struct TraceEvent {
  StepKind kind = StepKind::init;
  ConversionState<T> before;
  ConversionState<T> after;
};

template <Scalar T>
using Trace = std::vector<TraceEvent<T>>;

template <Scalar T>
using TraceSink = std::function<void(const TraceEvent<T>&)>;

struct ConvertOptions {
  Index index_bound = default_index_bound;
};

/// Distinct coordinates of a sorted COO by adjacent comparison.
template <Scalar T>
Index coo_count(const CooMatrix<T>& coo) noexcept {
  const auto n = coo.entries.size();
  if (n == 0) return 0;
  Index count = 1;
  for (std::size_t i = 1; i < n; ++i) {
    const auto& prev = coo.entries[i - 1].coord;
    const auto& cur = coo.entries[i].coord;
    if (prev.row != cur.row || prev.col != cur.col) ++count;
  }
  return count;
}

template <Scalar T>
struct ConversionResult {
  CooMatrix<T> sorted;
  CsrMatrix<T> csr;
  Trace<T> trace;
};

namespace detail {

/// Deliberate defects used to show the invariant checkers catch them.
enum class Fault {
  none,
  /// A duplicate overwrites the accumulated slot instead of adding to it.
  overwrite_duplicate,
  /// The skip-row guard `r + 1 <= ri` replaced by `r < ri`, evaluated on
  /// 32-bit unsigned words as in the original C (so r = -1 is 2^32 - 1).
  unsigned_less_guard,
};

template <typename V>
V& slot(std::vector<std::optional<V>>& buf, Index k, const char* name) {
  if (k < 0 || static_cast<std::size_t>(k) >= buf.size())
    throw std::out_of_range(std::string(name) + " write at " + std::to_string(k) +
                            " outside buffer of " + std::to_string(buf.size()));
  return buf[static_cast<std::size_t>(k)].emplace();
}

template <typename V>
V& written(std::vector<std::optional<V>>& buf, Index k, const char* name) {
  if (k < 0 || static_cast<std::size_t>(k) >= buf.size() || !buf[static_cast<std::size_t>(k)])
    throw std::out_of_range(std::string(name) + " read at " + std::to_string(k) +
                            " of an unwritten or missing slot");
  return *buf[static_cast<std::size_t>(k)];
}

inline bool skip_row_guard(Index r, Index ri, Fault fault) noexcept {
  if (fault == Fault::unsigned_less_guard)
    return static_cast<std::uint32_t>(r) < static_cast<std::uint32_t>(ri);
  return r + 1 <= ri;
}

template <Scalar T>
ConversionResult<T> convert(const CooMatrix<T>& coo, const ConvertOptions& opts, bool record,
                            const TraceSink<T>* sink, Fault fault) {
  if (!coo_wellformed(coo)) throw NotWellFormed("COO matrix is not well-formed");

  ConversionResult<T> out;
  out.sorted = sort_entries(coo);
  const auto& entries = out.sorted.entries;
  const Index n = static_cast<Index>(entries.size());
  const Index rows = out.sorted.rows;

  const Index k = coo_count(out.sorted);
  if (k > opts.index_bound)
    throw CapacityBound(std::to_string(k) + " distinct coordinates exceed index bound " +
                        std::to_string(opts.index_bound));
  if (rows + 1 > opts.index_bound)
    throw CapacityBound(std::to_string(rows + 1) + " row pointers exceed index bound " +
                        std::to_string(opts.index_bound));

  ConversionState<T> s;
  s.row_ptr.resize(static_cast<std::size_t>(rows + 1));
  s.col_ind.resize(static_cast<std::size_t>(k));
  s.vals.resize(static_cast<std::size_t>(k));

  const bool tracing = record || sink;
  ConversionState<T> before;
  auto mark = [&] {
    if (tracing) before = s;
  };
  auto emit = [&](StepKind kind) {
    if (!tracing) return;
    TraceEvent<T> ev{kind, std::move(before), s};
    if (sink) (*sink)(ev);
    if (record) out.trace.push_back(std::move(ev));
  };

  mark();
  emit(StepKind::init);

  for (; s.i < n;) {
    const auto& e = entries[static_cast<std::size_t>(s.i)];
    const Index ri = e.coord.row;
    const Index ci = e.coord.col;
    const T x = e.value;
    if (ri == s.r) {
      if (ci == s.c) {
        mark();
        T& acc = written(s.vals, s.l - 1, "val");
        acc = fault == Fault::overwrite_duplicate ? x : fp_add(acc, x);
        ++s.i;
        emit(StepKind::duplicate);
      } else {
        mark();
        s.c = ci;
        slot(s.col_ind, s.l, "col_ind") = ci;
        slot(s.vals, s.l, "val") = x;
        ++s.l;
        ++s.i;
        emit(StepKind::new_col);
      }
    } else {
      while (skip_row_guard(s.r, ri, fault)) {
        mark();
        ++s.r;
        slot(s.row_ptr, s.r, "row_ptr") = s.l;
        emit(StepKind::skip_row);
      }
      mark();
      s.c = ci;
      slot(s.col_ind, s.l, "col_ind") = ci;
      slot(s.vals, s.l, "val") = x;
      ++s.l;
      ++s.i;
      emit(StepKind::new_row);
    }
  }

  while (s.r + 1 <= rows) {
    mark();
    ++s.r;
    slot(s.row_ptr, s.r, "row_ptr") = s.l;
    emit(StepKind::last_rows);
  }

  mark();
  emit(StepKind::done);

  auto& csr = out.csr;
  csr.cols = out.sorted.cols;
  csr.row_ptr.clear();
  for (const auto& v : s.row_ptr) {
    if (!v) throw std::logic_error("row_ptr slot left unwritten");
    csr.row_ptr.push_back(*v);
  }
  for (const auto& v : s.col_ind) {
    if (!v) throw std::logic_error("col_ind slot left unwritten");
    csr.col_ind.push_back(*v);
  }
  for (const auto& v : s.vals) {
    if (!v) throw std::logic_error("val slot left unwritten");
    csr.vals.push_back(*v);
  }
  return out;
}

}  // namespace detail

/// Converts a well-formed COO matrix. The input is left untouched; duplicates
/// are summed left to right in the order they appear in the input.
///
/// Throws NotWellFormed for out-of-range entries and CapacityBound when the
/// number of distinct coordinates or rows + 1 exceeds `opts.index_bound`.
template <Scalar T>
CsrMatrix<T> coo_to_csr(const CooMatrix<T>& coo, const ConvertOptions& opts = {},
                        const TraceSink<T>* sink = nullptr) {
  return detail::convert(coo, opts, false, sink, detail::Fault::none).csr;
}

/// Same conversion, additionally returning the sorted entries and every step.
template <Scalar T>
ConversionResult<T> convert_with_trace(const CooMatrix<T>& coo, const ConvertOptions& opts = {}) {
  return detail::convert<T>(coo, opts, true, nullptr, detail::Fault::none);
}

}  // namespace coocsr
