#pragma once

// Executable forms of the relations used to prove the converter correct:
// the dense oracle, coo_to_matrix, coo_csr (entries_correspond and
// no_extra_zeros), partial_CSR, and a replayer that checks every step of a
// conversion trace against the lemma that justifies it.
//
// Failure verdicts name the violated clause after the proof's field names so a
// report can be matched against the definition it came from.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coocsr/convert.hpp"
#include "coocsr/coo.hpp"
#include "coocsr/csr.hpp"
#include "coocsr/dense.hpp"
#include "coocsr/errors.hpp"
#include "coocsr/scalars.hpp"
#include "coocsr/verdict.hpp"

namespace coocsr {

enum class CapPolicy {
  /// Above the cap, compare against the appearance-order fold (sound, incomplete).
  appearance_order,
  /// Above the cap, throw LengthCapExceeded.
  strict,
};

struct CheckOptions {
  std::size_t sum_cap = default_sum_cap;
  CapPolicy on_cap = CapPolicy::appearance_order;
  Index index_bound = default_index_bound;
};

/// Dense matrix whose (i, j) entry is the left-to-right sum of the values at
/// (i, j) in entry order; +0.0 where there are none.
template <Scalar T>
DenseMatrix<T> coo_to_dense_appearance_order(const CooMatrix<T>& coo) {
  if (!coo_wellformed(coo)) throw NotWellFormed("COO matrix is not well-formed");
  DenseMatrix<T> m(coo.rows, coo.cols);
  for (const auto& e : coo.entries) m(e.coord.row, e.coord.col) = fp_add(m(e.coord.row, e.coord.col), e.value);
  return m;
}

namespace detail {

inline std::string coord_str(Coord c) {
  return "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

template <Scalar T>
std::map<Coord, std::vector<T>> group_values(const CooMatrix<T>& coo) {
  std::map<Coord, std::vector<T>> groups;
  for (const auto& e : coo.entries) groups[e.coord].push_back(e.value);
  return groups;
}

/// Memoized sum_any membership with the cap fallback.
template <Scalar T>
class SumOracle {
 public:
  explicit SumOracle(const CheckOptions& opts) : opts_(opts) {}

  bool member(const std::vector<T>& group, T v) {
    if (group.size() > opts_.sum_cap) {
      if (opts_.on_cap == CapPolicy::strict) throw LengthCapExceeded(group.size(), opts_.sum_cap);
      fallback_used = true;
      return bit_equal(sum_left_to_right(group), v);
    }
    std::vector<bits_t<T>> key;
    key.reserve(group.size());
    for (T x : group) key.push_back(to_bits(x));
    auto it = memo_.find(key);
    if (it == memo_.end()) it = memo_.emplace(std::move(key), sum_any_set(group, opts_.sum_cap)).first;
    return it->second.contains(v);
  }

  bool fallback_used = false;

 private:
  CheckOptions opts_;
  std::map<std::vector<bits_t<T>>, SumSet<T>> memo_;
};

template <Scalar T>
Verdict finish(Verdict v, const SumOracle<T>& oracle) {
  v.deterministic_fallback = v.deterministic_fallback || oracle.fallback_used;
  return v;
}

template <Scalar T>
Verdict check_coo_to_matrix(const CooMatrix<T>& coo, const DenseMatrix<T>& m, SumOracle<T>& oracle) {
  if (coo.rows != m.rows())
    return Verdict::fail("coo_to_matrix_rows", std::to_string(coo.rows) + " vs " + std::to_string(m.rows()));
  if (coo.cols != m.cols())
    return Verdict::fail("coo_to_matrix_cols", std::to_string(coo.cols) + " vs " + std::to_string(m.cols()));
  const auto groups = group_values(coo);
  for (Index i = 0; i < coo.rows; ++i) {
    for (Index j = 0; j < coo.cols; ++j) {
      const auto it = groups.find(Coord{i, j});
      const bool ok = it == groups.end() ? bit_equal(m(i, j), T{0}) : oracle.member(it->second, m(i, j));
      if (!ok)
        return Verdict::fail("coo_to_matrix_sum_any", "entry " + coord_str({i, j}) + " = " +
                                                          std::to_string(m(i, j)) +
                                                          " is not a sum of its duplicates");
    }
  }
  return Verdict::pass();
}

template <Scalar T>
Verdict check_entries_correspond(const CooMatrix<T>& coo, const CsrMatrix<T>& csr, SumOracle<T>& oracle) {
  if (!entries_sorted(coo)) return Verdict::fail("entries_correspond", "COO entries are not sorted");
  const auto groups = group_values(coo);
  Index k = -1;  // cd_upto(h+1) - 1
  for (std::size_t h = 0; h < coo.entries.size(); ++h) {
    const Coord rc = coo.entries[h].coord;
    if (h == 0 || coo.entries[h - 1].coord != rc) ++k;
    const std::string where = "entry " + std::to_string(h) + " " + coord_str(rc) + ", slot " + std::to_string(k);
    if (rc.row < 0 || static_cast<std::size_t>(rc.row + 1) >= csr.row_ptr.size())
      return Verdict::fail("entries_correspond", where + ": row has no row_ptr segment");
    const Index lo = csr.row_ptr[static_cast<std::size_t>(rc.row)];
    const Index hi = csr.row_ptr[static_cast<std::size_t>(rc.row + 1)];
    if (k < lo || k >= hi)
      return Verdict::fail("entries_correspond", where + ": slot outside row segment [" + std::to_string(lo) +
                                                     "," + std::to_string(hi) + ")");
    if (static_cast<std::size_t>(k) >= csr.col_ind.size() || csr.col_ind[static_cast<std::size_t>(k)] != rc.col)
      return Verdict::fail("entries_correspond", where + ": col_ind mismatch");
    if (static_cast<std::size_t>(k) >= csr.vals.size() ||
        !oracle.member(groups.at(rc), csr.vals[static_cast<std::size_t>(k)]))
      return Verdict::fail("entries_correspond", where + ": value is not a sum of the duplicates");
  }
  return Verdict::pass();
}

}  // namespace detail

/// no_extra_zeros: every stored slot of rows [0, coo.rows) is at a coordinate
/// that occurs in the COO.
template <Scalar T>
Verdict check_no_extra_zeros(const CooMatrix<T>& coo, const CsrMatrix<T>& csr) {
  std::set<Coord> present;
  for (const auto& e : coo.entries) present.insert(e.coord);
  if (coo.rows > 0 && csr.row_ptr.size() < static_cast<std::size_t>(coo.rows + 1))
    return Verdict::fail("no_extra_zeros", "row_ptr shorter than rows + 1");
  for (Index r = 0; r < coo.rows; ++r) {
    for (Index k = csr.row_ptr[static_cast<std::size_t>(r)]; k < csr.row_ptr[static_cast<std::size_t>(r + 1)]; ++k) {
      if (k < 0 || static_cast<std::size_t>(k) >= csr.col_ind.size())
        return Verdict::fail("no_extra_zeros", "slot " + std::to_string(k) + " outside col_ind");
      const Coord rc{r, csr.col_ind[static_cast<std::size_t>(k)]};
      if (!present.count(rc))
        return Verdict::fail("no_extra_zeros", "slot " + std::to_string(k) + " at " + detail::coord_str(rc) +
                                                   " has no COO entry");
    }
  }
  return Verdict::pass();
}

namespace detail {

template <Scalar T>
Verdict check_coo_csr(const CooMatrix<T>& coo, const CsrMatrix<T>& csr, SumOracle<T>& oracle) {
  if (!entries_sorted(coo)) return Verdict::fail("coo_csr", "COO entries are not sorted");
  if (coo.rows != csr.rows())
    return Verdict::fail("coo_csr_rows", std::to_string(coo.rows) + " vs " + std::to_string(csr.rows()));
  if (coo.cols != csr.cols)
    return Verdict::fail("coo_csr_cols", std::to_string(coo.cols) + " vs " + std::to_string(csr.cols));
  if (csr.nnz() != count_distinct(coo.entries))
    return Verdict::fail("coo_csr_vals", "len(vals) = " + std::to_string(csr.nnz()) + ", distinct = " +
                                             std::to_string(count_distinct(coo.entries)));
  if (auto v = check_entries_correspond(coo, csr, oracle); !v)
    return Verdict::fail("coo_csr_entries", v.detail);
  if (auto v = check_no_extra_zeros(coo, csr); !v) return Verdict::fail("coo_csr_zeros", v.detail);
  return Verdict::pass();
}

}  // namespace detail

/// Does m hold, at every position, some order-and-association sum of the COO
/// values there? Dimensions must agree.
template <Scalar T>
Verdict check_coo_to_matrix(const CooMatrix<T>& coo, const DenseMatrix<T>& m, const CheckOptions& opts = {}) {
  detail::SumOracle<T> oracle(opts);
  return detail::finish(detail::check_coo_to_matrix(coo, m, oracle), oracle);
}

/// Every COO entry has its slot in its row, at its column, holding a sum of
/// the duplicates at that coordinate. Requires sorted entries.
template <Scalar T>
Verdict check_entries_correspond(const CooMatrix<T>& coo, const CsrMatrix<T>& csr, const CheckOptions& opts = {}) {
  detail::SumOracle<T> oracle(opts);
  return detail::finish(detail::check_entries_correspond(coo, csr, oracle), oracle);
}

/// The structural COO/CSR correspondence: equal dimensions, one slot per
/// distinct coordinate, and both correspondence directions.
template <Scalar T>
Verdict check_coo_csr(const CooMatrix<T>& coo, const CsrMatrix<T>& csr, const CheckOptions& opts = {}) {
  detail::SumOracle<T> oracle(opts);
  return detail::finish(detail::check_coo_csr(coo, csr, oracle), oracle);
}

namespace detail {

/// The CSR a sorted prefix must correspond to, built by counting slots per row
/// rather than by running the converter. Rows past the prefix all point at
/// the end of the filled slots.
template <Scalar T>
CsrMatrix<T> prefix_witness(const CooMatrix<T>& sorted, Index h) {
  CsrMatrix<T> w;
  w.cols = sorted.cols;
  w.row_ptr.assign(static_cast<std::size_t>(sorted.rows + 1), 0);
  std::vector<Index> per_row(static_cast<std::size_t>(sorted.rows), 0);
  for (Index e = 0; e < h; ++e) {
    const auto& entry = sorted.entries[static_cast<std::size_t>(e)];
    if (e > 0 && sorted.entries[static_cast<std::size_t>(e - 1)].coord == entry.coord) {
      w.vals.back() = fp_add(w.vals.back(), entry.value);
      continue;
    }
    ++per_row[static_cast<std::size_t>(entry.coord.row)];
    w.col_ind.push_back(entry.coord.col);
    w.vals.push_back(entry.value);
  }
  for (Index r = 0; r < sorted.rows; ++r)
    w.row_ptr[static_cast<std::size_t>(r + 1)] = w.row_ptr[static_cast<std::size_t>(r)] + per_row[static_cast<std::size_t>(r)];
  return w;
}

template <Scalar T>
Verdict check_partial_csr(Index h, Index r, const CooMatrix<T>& coo, const ConversionState<T>& st,
                          const CheckOptions& opts, SumOracle<T>& oracle) {
  const Index n = static_cast<Index>(coo.entries.size());
  if (!coo_wellformed(coo)) return Verdict::fail("partial_CSR_coo");
  if (!entries_sorted(coo)) return Verdict::fail("partial_CSR_coo_sorted");
  if (h < 0 || h > n) return Verdict::fail("partial_CSR_i", "h = " + std::to_string(h));
  if (r < -1 || r > coo.rows) return Verdict::fail("partial_CSR_r", "r = " + std::to_string(r));
  for (Index e = 0; e < h; ++e)
    if (coo.entries[static_cast<std::size_t>(e)].coord.row > r)
      return Verdict::fail("partial_CSR_r'", "entry " + std::to_string(e) + " has row " +
                                                 std::to_string(coo.entries[static_cast<std::size_t>(e)].coord.row) +
                                                 " > r = " + std::to_string(r));
  for (Index e = h; e < n; ++e)
    if (coo.entries[static_cast<std::size_t>(e)].coord.row < r)
      return Verdict::fail("partial_CSR_r''", "entry " + std::to_string(e) + " has row " +
                                                  std::to_string(coo.entries[static_cast<std::size_t>(e)].coord.row) +
                                                  " < r = " + std::to_string(r));

  const Index distinct = count_distinct(coo.entries);
  if (static_cast<Index>(st.vals.size()) != distinct)
    return Verdict::fail("partial_CSR_val'", "len(val) = " + std::to_string(st.vals.size()));
  if (static_cast<Index>(st.col_ind.size()) != distinct)
    return Verdict::fail("partial_CSR_colind'", "len(colind) = " + std::to_string(st.col_ind.size()));
  if (static_cast<Index>(st.row_ptr.size()) != coo.rows + 1)
    return Verdict::fail("partial_CSR_rowptr'", "len(rowptr) = " + std::to_string(st.row_ptr.size()));
  if (distinct > opts.index_bound) return Verdict::fail("partial_CSR_dbound");

  const CsrMatrix<T> witness = prefix_witness(coo, h);
  if (auto v = csr_wellformed_report(witness, opts.index_bound); !v)
    return Verdict::fail("partial_CSR_wf", v.clause + ": " + v.detail);
  const CooMatrix<T> prefix = coo_upto(h, coo);
  if (auto v = check_coo_csr(prefix, witness, oracle); !v)
    return Verdict::fail("partial_CSR_coo_csr", v.clause + ": " + v.detail);

  for (std::size_t k = 0; k < witness.vals.size(); ++k) {
    if (!st.vals[k] || !bit_equal(*st.vals[k], witness.vals[k]))
      return Verdict::fail("partial_CSR_val", "slot " + std::to_string(k) +
                                                  (st.vals[k] ? " = " + std::to_string(*st.vals[k]) : " undefined") +
                                                  ", expected " + std::to_string(witness.vals[k]));
    if (!st.col_ind[k] || *st.col_ind[k] != witness.col_ind[k])
      return Verdict::fail("partial_CSR_colind", "slot " + std::to_string(k) + ", expected column " +
                                                     std::to_string(witness.col_ind[k]));
  }
  for (Index q = 0; q <= r && q < static_cast<Index>(st.row_ptr.size()); ++q) {
    const auto& got = st.row_ptr[static_cast<std::size_t>(q)];
    const Index want = witness.row_ptr[static_cast<std::size_t>(q)];
    if (!got || *got != want)
      return Verdict::fail("partial_CSR_rowptr", "rowptr[" + std::to_string(q) + "] " +
                                                     (got ? "= " + std::to_string(*got) : "undefined") +
                                                     ", expected " + std::to_string(want));
  }
  return Verdict::pass();
}

}  // namespace detail

/// partial_CSR h r coo ROWPTR COLIND VAL, with the buffers taken from `state`.
/// The existential CSR is constructed from the first h entries and its row
/// pointers past the prefix are completed with the number of filled slots.
template <Scalar T>
Verdict check_partial_csr(Index h, Index r, const CooMatrix<T>& coo, const ConversionState<T>& state,
                          const CheckOptions& opts = {}) {
  detail::SumOracle<T> oracle(opts);
  return detail::finish(detail::check_partial_csr(h, r, coo, state, opts, oracle), oracle);
}

namespace detail {

template <Scalar T>
std::optional<Verdict> write_expected(std::vector<std::optional<T>>& buf, Index k, T v, const char* clause) {
  if (k < 0 || static_cast<std::size_t>(k) >= buf.size())
    return Verdict::fail(clause, "slot " + std::to_string(k) + " outside buffer");
  buf[static_cast<std::size_t>(k)] = v;
  return std::nullopt;
}

inline std::optional<Verdict> write_expected(std::vector<std::optional<Index>>& buf, Index k, Index v,
                                             const char* clause) {
  if (k < 0 || static_cast<std::size_t>(k) >= buf.size())
    return Verdict::fail(clause, "slot " + std::to_string(k) + " outside buffer");
  buf[static_cast<std::size_t>(k)] = v;
  return std::nullopt;
}

constexpr const char* lemma_name(StepKind k) noexcept {
  switch (k) {
    case StepKind::init: return "partial_CSR_0";
    case StepKind::duplicate: return "partial_CSR_duplicate";
    case StepKind::new_col: return "partial_CSR_newcol";
    case StepKind::skip_row: return "partial_CSR_skiprow";
    case StepKind::new_row: return "partial_CSR_newrow";
    case StepKind::last_rows: return "partial_CSR_lastrows";
    case StepKind::done: return "partial_CSR_properties";
  }
  return "?";
}

/// Checks one step's lemma premises in `before` and that `after` is exactly
/// the lemma's prescribed update.
template <Scalar T>
Verdict check_step(const TraceEvent<T>& ev, const CooMatrix<T>& coo) {
  const auto& b = ev.before;
  const Index n = static_cast<Index>(coo.entries.size());
  auto entry = [&](Index k) -> const CooEntry<T>& { return coo.entries[static_cast<std::size_t>(k)]; };
  ConversionState<T> want = b;

  switch (ev.kind) {
    case StepKind::init:
      return Verdict::fail("trace_shape", "Init after the first event");

    case StepKind::duplicate: {
      const char* lemma = "partial_CSR_duplicate";
      const Index h = b.i;
      if (!(0 < h && h < n)) return Verdict::fail(lemma, "premise 0 < h < n fails, h = " + std::to_string(h));
      if (entry(h - 1).coord != entry(h).coord)
        return Verdict::fail(lemma, "premise: entry " + std::to_string(h) + " does not repeat the previous coordinate");
      if (b.r != entry(h - 1).coord.row)
        return Verdict::fail(lemma, "premise: r = " + std::to_string(b.r) + " is not the previous entry's row");
      const Index k = cd_upto(h, coo) - 1;
      if (k < 0 || static_cast<std::size_t>(k) >= b.vals.size() || !b.vals[static_cast<std::size_t>(k)])
        return Verdict::fail(lemma, "premise: VAL slot " + std::to_string(k) + " is not a defined float");
      const T f = *b.vals[static_cast<std::size_t>(k)];
      want.vals[static_cast<std::size_t>(k)] = fp_add(f, entry(h).value);
      want.i = h + 1;
      break;
    }

    case StepKind::new_col:
    case StepKind::new_row: {
      const bool col = ev.kind == StepKind::new_col;
      const char* lemma = col ? "partial_CSR_newcol" : "partial_CSR_newrow";
      const Index i = b.i;
      if (col ? !(0 < i && i < n) : !(0 <= i && i < n))
        return Verdict::fail(lemma, "premise on i fails, i = " + std::to_string(i));
      const auto& e = entry(i);
      if (e.coord.row != b.r)
        return Verdict::fail(lemma, "premise: entry " + std::to_string(i) + " has row " +
                                        std::to_string(e.coord.row) + " but r = " + std::to_string(b.r));
      if (col) {
        if (entry(i - 1).coord.row != b.r) return Verdict::fail(lemma, "premise: previous entry is in another row");
        if (entry(i - 1).coord.col == e.coord.col)
          return Verdict::fail(lemma, "premise: column repeats the previous entry");
      } else if (i != 0 && entry(i - 1).coord.row == b.r) {
        return Verdict::fail(lemma, "premise: previous entry is in the same row");
      }
      const Index k = cd_upto(i, coo);
      if (auto v = write_expected(want.col_ind, k, e.coord.col, lemma)) return *v;
      if (auto v = write_expected(want.vals, k, e.value, lemma)) return *v;
      want.i = i + 1;
      want.l = b.l + 1;
      want.c = e.coord.col;
      break;
    }

    case StepKind::skip_row: {
      const char* lemma = "partial_CSR_skiprow";
      const Index i = b.i;
      const Index r = b.r + 1;
      if (!(0 <= i && i < n)) return Verdict::fail(lemma, "premise 0 <= i < n fails, i = " + std::to_string(i));
      if (r > entry(i).coord.row)
        return Verdict::fail(lemma, "premise: r = " + std::to_string(r) + " beyond row of entry " + std::to_string(i));
      if (auto v = write_expected(want.row_ptr, r, cd_upto(i, coo), lemma)) return *v;
      want.r = r;
      break;
    }

    case StepKind::last_rows: {
      const char* lemma = "partial_CSR_lastrows";
      const Index r = b.r + 1;
      if (b.i != n) return Verdict::fail(lemma, "premise: not all entries processed");
      if (r > coo.rows) return Verdict::fail(lemma, "premise: r = " + std::to_string(r) + " > rows");
      if (auto v = write_expected(want.row_ptr, r, count_distinct(coo.entries), lemma)) return *v;
      want.r = r;
      break;
    }

    case StepKind::done:
      break;
  }

  if (!same_state(ev.after, want)) {
    std::string what;
    if (ev.after.i != want.i) what += " i";
    if (ev.after.r != want.r) what += " r";
    if (ev.after.c != want.c) what += " c";
    if (ev.after.l != want.l) what += " l";
    if (ev.after.row_ptr != want.row_ptr) what += " ROWPTR";
    if (ev.after.col_ind != want.col_ind) what += " COLIND";
    if (!same_state(ConversionState<T>{0, 0, 0, 0, {}, {}, ev.after.vals},
                    ConversionState<T>{0, 0, 0, 0, {}, {}, want.vals}))
      what += " VAL";
    return Verdict::fail(lemma_name(ev.kind), "state after the step differs in:" + what);
  }
  return Verdict::pass();
}

/// Main-loop invariant: l counts the distinct coordinates seen, the row cursor
/// tracks the previous entry.
template <Scalar T>
Verdict check_loop_invariant(const ConversionState<T>& s, const CooMatrix<T>& coo) {
  if (s.i < 0 || s.i > static_cast<Index>(coo.entries.size()))
    return Verdict::fail("loop_invariant", "i out of range");
  if (s.l != cd_upto(s.i, coo)) return Verdict::fail("loop_invariant", "l != cd_upto(i)");
  if (!(-1 <= s.r && s.r < coo.rows)) return Verdict::fail("loop_invariant", "r outside [-1, rows)");
  if (s.l == 0 && s.r != -1) return Verdict::fail("loop_invariant", "l = 0 but r != -1");
  if (s.i != 0 && s.r != coo.entries[static_cast<std::size_t>(s.i - 1)].coord.row)
    return Verdict::fail("loop_invariant", "r is not the row of entry i-1");
  return Verdict::pass();
}

}  // namespace detail

/// Replays a conversion trace. The trace is interpreted against the stable
/// sort of `coo` (which is `coo` itself when already sorted).
///
/// Accepts iff the first event is Init in the partial_CSR_0 state, every later
/// event starts where the previous one ended, satisfies its lemma's premises,
/// produces exactly the lemma's update and re-establishes partial_CSR, and the
/// trace ends with Done at i = n, r = rows, from which a CSR and a dense
/// matrix satisfying csr_to_matrix and coo_to_matrix are extracted.
template <Scalar T>
Verdict check_trace(const CooMatrix<T>& coo, const Trace<T>& trace, const CheckOptions& opts = {}) {
  using detail::SumOracle;
  SumOracle<T> oracle(opts);
  auto done = [&](Verdict v) { return detail::finish(std::move(v), oracle); };

  if (!coo_wellformed(coo)) return done(Verdict::fail("partial_CSR_coo", "COO matrix is not well-formed"));
  const CooMatrix<T> sorted = entries_sorted(coo) ? coo : sort_entries(coo);
  const Index n = static_cast<Index>(sorted.entries.size());
  const Index distinct = count_distinct(sorted.entries);

  if (trace.empty()) return done(Verdict::fail("trace_shape", "empty trace"));
  if (trace.front().kind != StepKind::init)
    return done(Verdict::fail("trace_shape", "first event is not Init").at_event(0));

  {
    const auto& s = trace.front().after;
    if (distinct > opts.index_bound) return done(Verdict::fail("partial_CSR_0", "cd exceeds bound").at_event(0));
    const bool fresh = s.i == 0 && s.r == -1 && s.l == 0 && s.row_ptr.size() == static_cast<std::size_t>(sorted.rows + 1) &&
                       s.col_ind.size() == static_cast<std::size_t>(distinct) &&
                       s.vals.size() == static_cast<std::size_t>(distinct) &&
                       std::ranges::none_of(s.row_ptr, [](const auto& v) { return v.has_value(); }) &&
                       std::ranges::none_of(s.col_ind, [](const auto& v) { return v.has_value(); }) &&
                       std::ranges::none_of(s.vals, [](const auto& v) { return v.has_value(); });
    if (!fresh) return done(Verdict::fail("partial_CSR_0", "initial state is not i=0, r=-1 with undefined buffers").at_event(0));
    if (auto v = detail::check_partial_csr(0, -1, sorted, s, opts, oracle); !v) return done(v.at_event(0));
    if (auto v = detail::check_loop_invariant(s, sorted); !v) return done(v.at_event(0));
  }

  for (std::size_t idx = 1; idx < trace.size(); ++idx) {
    const auto& ev = trace[idx];
    const auto& prev = trace[idx - 1];
    if (prev.kind == StepKind::done) return done(Verdict::fail("trace_shape", "event after Done").at_event(idx));
    if (!same_state(ev.before, prev.after))
      return done(Verdict::fail("trace_continuity", "state before differs from previous state after").at_event(idx));
    if (auto v = detail::check_step(ev, sorted); !v) return done(v.at_event(idx));
    if (ev.kind == StepKind::done) continue;
    if (auto v = detail::check_partial_csr(ev.after.i, ev.after.r, sorted, ev.after, opts, oracle); !v)
      return done(v.at_event(idx));
    if (ev.kind == StepKind::duplicate || ev.kind == StepKind::new_col || ev.kind == StepKind::new_row)
      if (auto v = detail::check_loop_invariant(ev.after, sorted); !v) return done(v.at_event(idx));
  }

  const std::size_t last = trace.size() - 1;
  const auto& fin = trace.back();
  if (fin.kind != StepKind::done) return done(Verdict::fail("trace_shape", "trace does not end with Done").at_event(last));
  const auto& s = fin.after;
  const char* props = "partial_CSR_properties";
  if (s.i != n || s.r != sorted.rows)
    return done(Verdict::fail(props, "final state is not i = n, r = rows").at_event(last));

  CsrMatrix<T> csr;
  csr.cols = sorted.cols;
  csr.row_ptr.clear();
  for (const auto& v : s.row_ptr) {
    if (!v) return done(Verdict::fail(props, "ROWPTR has an undefined slot").at_event(last));
    csr.row_ptr.push_back(*v);
  }
  for (const auto& v : s.col_ind) {
    if (!v) return done(Verdict::fail(props, "COLIND has an undefined slot").at_event(last));
    csr.col_ind.push_back(*v);
  }
  for (const auto& v : s.vals) {
    if (!v) return done(Verdict::fail(props, "VAL has an undefined slot").at_event(last));
    csr.vals.push_back(*v);
  }
  if (csr.nnz() != distinct || static_cast<Index>(csr.col_ind.size()) != distinct)
    return done(Verdict::fail(props, "extracted lengths differ from cd").at_event(last));
  if (auto v = csr_wellformed_report(csr, opts.index_bound); !v)
    return done(Verdict::fail(props, "extracted CSR: " + v.clause + " " + v.detail).at_event(last));
  if (auto v = detail::check_coo_csr(sorted, csr, oracle); !v)
    return done(Verdict::fail(props, "extracted CSR: " + v.clause + " " + v.detail).at_event(last));
  const DenseMatrix<T> m = csr_to_dense(csr);
  if (auto v = detail::check_coo_to_matrix(coo, m, oracle); !v)
    return done(Verdict::fail(props, "coo_to_matrix: " + v.clause + " " + v.detail).at_event(last));
  return done(Verdict::pass());
}

}  // namespace coocsr
