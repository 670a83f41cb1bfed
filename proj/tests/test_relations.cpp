#include "coocsr/relations.hpp"

#include <gtest/gtest.h>

#include <vector>

#include "coocsr/convert.hpp"
#include "coocsr/fuzz.hpp"
#include "coocsr/random.hpp"
#include "fixtures.hpp"

using namespace coocsr;

TEST(AppearanceOrderDense, Examples) {
  EXPECT_TRUE(bit_equal(coo_to_dense_appearance_order(fixtures::example_coo()), fixtures::example_dense()));
  EXPECT_TRUE(bit_equal(coo_to_dense_appearance_order(CooMatrix<double>{2, 2, {}}), DenseMatrix<double>(2, 2)));
  const CooMatrix<double> cancel{1, 1, {{{0, 0}, 1e16}, {{0, 0}, 1.0}, {{0, 0}, -1e16}}};
  EXPECT_TRUE(bit_equal(coo_to_dense_appearance_order(cancel)(0, 0), (1e16 + 1.0) + -1e16));
}

TEST(CheckCooToMatrix, Examples) {
  const auto coo = fixtures::example_coo();
  EXPECT_TRUE(check_coo_to_matrix(coo, fixtures::example_dense()));
  auto changed = fixtures::example_dense();
  changed(0, 0) = 11.0;
  const auto v = check_coo_to_matrix(coo, changed);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.clause, "coo_to_matrix_sum_any");
  EXPECT_TRUE(check_coo_to_matrix(CooMatrix<double>{1, 1, {}}, DenseMatrix<double>(1, 1)));
  EXPECT_EQ(check_coo_to_matrix(coo, DenseMatrix<double>(5, 6)).clause, "coo_to_matrix_rows");
}

TEST(CheckCooToMatrix, AcceptsEveryOrderOfSummation) {
  const CooMatrix<double> cancel{1, 1, {{{0, 0}, 1e16}, {{0, 0}, 1.0}, {{0, 0}, -1e16}}};
  DenseMatrix<double> m(1, 1);
  m(0, 0) = 1.0;
  EXPECT_TRUE(check_coo_to_matrix(cancel, m));
  m(0, 0) = 0.0;
  EXPECT_TRUE(check_coo_to_matrix(cancel, m));
  m(0, 0) = 2.0;
  EXPECT_FALSE(check_coo_to_matrix(cancel, m));
}

TEST(CheckCooToMatrix, CapPolicy) {
  CooMatrix<double> many{1, 1, {}};
  for (int k = 0; k < 9; ++k) many.entries.push_back({{0, 0}, 1.0});
  DenseMatrix<double> m(1, 1);
  m(0, 0) = 9.0;
  const auto v = check_coo_to_matrix(many, m);
  EXPECT_TRUE(v);
  EXPECT_TRUE(v.deterministic_fallback);
  EXPECT_EQ(v.to_string(), "ok (checked-deterministic)");
  CheckOptions strict;
  strict.on_cap = CapPolicy::strict;
  EXPECT_THROW(check_coo_to_matrix(many, m, strict), LengthCapExceeded);
  CheckOptions wide;
  wide.sum_cap = 9;
  EXPECT_FALSE(check_coo_to_matrix(many, m, wide).deterministic_fallback);
}

TEST(CheckEntriesCorrespond, Examples) {
  const auto coo = fixtures::example_coo();
  EXPECT_TRUE(check_entries_correspond(coo, fixtures::example_csr()));
  EXPECT_TRUE(check_entries_correspond(coo_upto(4, coo), fixtures::example_prefix4_csr()));
  auto bad = fixtures::example_csr();
  bad.col_ind[0] = 1;
  EXPECT_FALSE(check_entries_correspond(coo, bad));
}

TEST(CheckNoExtraZeros, Examples) {
  EXPECT_TRUE(check_no_extra_zeros(fixtures::example_coo(), fixtures::example_csr()));
  CsrMatrix<double> one;
  one.cols = 1;
  one.row_ptr = {0, 1};
  one.col_ind = {0};
  one.vals = {0.0};
  EXPECT_FALSE(check_no_extra_zeros(CooMatrix<double>{1, 1, {}}, one));
  CsrMatrix<double> empty_rows;
  empty_rows.cols = 6;
  empty_rows.row_ptr.assign(7, 0);
  EXPECT_TRUE(check_no_extra_zeros(fixtures::example_coo(), empty_rows));
}

TEST(CheckCooCsr, Examples) {
  const auto coo = fixtures::example_coo();
  EXPECT_TRUE(check_coo_csr(coo, fixtures::example_csr()));

  auto extra = fixtures::example_csr();
  // Row 5 gains an explicit zero at column 0.
  extra.row_ptr.back() = 20;
  extra.col_ind = {0, 4, 0, 1, 5, 1, 2, 3, 0, 2, 3, 4, 1, 3, 4, 5, 0, 1, 4, 5};
  extra.vals = {10, -2, 3, 9, 3, 7, 8, 7, 3, 8, 7, 5, 8, 9, 9, 13, 0, 4, 2, -1};
  ASSERT_TRUE(csr_wellformed(extra));
  EXPECT_EQ(check_coo_csr(coo, extra).clause, "coo_csr_vals");

  CsrMatrix<double> empty;
  EXPECT_TRUE(check_coo_csr(CooMatrix<double>{0, 0, {}}, empty));
  EXPECT_EQ(check_coo_csr(coo, CsrMatrix<double>{}).clause, "coo_csr_rows");
}

TEST(CheckCooCsr, ExplicitZeroIsStrongerThanDenseEquality) {
  const CooMatrix<double> coo{2, 2, {{{0, 0}, 1.0}, {{1, 1}, 0.0}}};
  const auto kept = coo_to_csr(coo);
  EXPECT_EQ(kept.nnz(), 2);
  EXPECT_TRUE(check_entries_correspond(coo, kept));
  EXPECT_TRUE(check_coo_csr(coo, kept));

  CsrMatrix<double> omitted;
  omitted.cols = 2;
  omitted.row_ptr = {0, 1, 1};
  omitted.col_ind = {0};
  omitted.vals = {1.0};
  ASSERT_TRUE(csr_wellformed(omitted));
  EXPECT_TRUE(bit_equal(csr_to_dense(kept), csr_to_dense(omitted)));
  EXPECT_TRUE(check_coo_to_matrix(coo, csr_to_dense(omitted)));
  const auto v = check_coo_csr(coo, omitted);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.clause, "coo_csr_vals");
}

TEST(CheckPartialCsr, Examples) {
  const auto coo = fixtures::example_coo();
  const auto res = convert_with_trace(coo);
  EXPECT_TRUE(check_partial_csr(0, -1, coo, res.trace.front().after));

  const auto& prefix4 = res.trace[6].after;
  ASSERT_EQ(prefix4.i, 4);
  EXPECT_TRUE(check_partial_csr(4, 1, coo, prefix4));
  const auto v = check_partial_csr(4, 0, coo, prefix4);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.clause, "partial_CSR_r'");
}

TEST(CheckPartialCsr, NamesClauses) {
  const auto coo = fixtures::example_coo();
  const auto state = convert_with_trace(coo).trace[6].after;
  EXPECT_EQ(check_partial_csr(21, 1, coo, state).clause, "partial_CSR_i");
  EXPECT_EQ(check_partial_csr(4, 7, coo, state).clause, "partial_CSR_r");
  EXPECT_EQ(check_partial_csr(4, 2, coo, state).clause, "partial_CSR_r''");

  auto val = state;
  val.vals[0] = 7.0;
  EXPECT_EQ(check_partial_csr(4, 1, coo, val).clause, "partial_CSR_val");
  auto col = state;
  col.col_ind[1] = 3;
  EXPECT_EQ(check_partial_csr(4, 1, coo, col).clause, "partial_CSR_colind");
  auto ptr = state;
  ptr.row_ptr[1] = 1;
  EXPECT_EQ(check_partial_csr(4, 1, coo, ptr).clause, "partial_CSR_rowptr");
  auto len = state;
  len.vals.pop_back();
  EXPECT_EQ(check_partial_csr(4, 1, coo, len).clause, "partial_CSR_val'");

  auto unsorted = coo;
  std::swap(unsorted.entries[0], unsorted.entries[5]);
  EXPECT_EQ(check_partial_csr(4, 1, unsorted, state).clause, "partial_CSR_coo_sorted");
  CheckOptions tight;
  tight.index_bound = 10;
  EXPECT_EQ(check_partial_csr(4, 1, coo, state, tight).clause, "partial_CSR_dbound");
}

TEST(CheckTrace, AcceptsConverterTraces) {
  const auto coo = fixtures::example_coo();
  EXPECT_TRUE(check_trace(coo, convert_with_trace(coo).trace));
  const CooMatrix<double> empty{3, 2, {}};
  EXPECT_TRUE(check_trace(empty, convert_with_trace(empty).trace));
  auto shuffled = coo;
  std::swap(shuffled.entries[0], shuffled.entries[19]);
  EXPECT_TRUE(check_trace(shuffled, convert_with_trace(shuffled).trace));
}

TEST(CheckTrace, RejectsOverwrittenDuplicate) {
  const auto coo = fixtures::example_coo();
  auto trace = convert_with_trace(coo).trace;
  // Event 3 folds the duplicate at (0,0); rewrite it as an overwrite and keep
  // the rest of the trace consistent with that.
  const auto bad = detail::convert<double>(coo, {}, true, nullptr, detail::Fault::overwrite_duplicate).trace;
  ASSERT_EQ(bad[3].kind, StepKind::duplicate);
  const auto v = check_trace(coo, bad);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.clause, "partial_CSR_duplicate");
  EXPECT_EQ(v.event, 3u);

  trace[3].after.vals[0] = 3.0;
  const auto spliced = check_trace(coo, trace);
  EXPECT_FALSE(spliced);
  EXPECT_EQ(spliced.event, 3u);
}

TEST(CheckTrace, RejectsMutatedLoopGuard) {
  const CooMatrix<double> coo{2, 2, {{{0, 0}, 1.0}, {{1, 1}, 2.0}}};
  const auto bad = detail::convert<double>(coo, {}, true, nullptr, detail::Fault::unsigned_less_guard).trace;
  const auto v = check_trace(coo, bad);
  EXPECT_FALSE(v);
  EXPECT_EQ(v.clause, "partial_CSR_newrow");
  EXPECT_EQ(v.event, 1u);
}

TEST(CheckTrace, RejectsMalformedTraces) {
  const auto coo = fixtures::example_coo();
  const auto trace = convert_with_trace(coo).trace;
  EXPECT_EQ(check_trace(coo, Trace<double>{}).clause, "trace_shape");

  auto truncated = trace;
  truncated.pop_back();
  EXPECT_EQ(check_trace(coo, truncated).clause, "trace_shape");

  auto gap = trace;
  gap.erase(gap.begin() + 4);
  EXPECT_EQ(check_trace(coo, gap).clause, "trace_continuity");

  auto skipped = trace;
  skipped[2].after.row_ptr[0] = 1;
  EXPECT_FALSE(check_trace(coo, skipped));
}

TEST(CheckTrace, AcceptsRandomTraces) {
  CaseShape shape;
  shape.max_multiplicity = 4;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const auto coo = random_case<double>(mix_seed(12, k), shape);
    const auto v = check_trace(coo, convert_with_trace(coo).trace);
    ASSERT_TRUE(v) << "case " << k << ": " << v.to_string();
  }
}

TEST(CheckTrace, FinalStateRelations) {
  CaseShape shape;
  shape.regime = ValueRegime::full;
  shape.max_multiplicity = 5;
  for (std::uint64_t k = 0; k < 300; ++k) {
    const auto coo = random_case<double>(mix_seed(13, k), shape);
    const auto res = convert_with_trace(coo);
    ASSERT_TRUE(check_coo_csr(res.sorted, res.csr)) << k;
    ASSERT_TRUE(check_coo_to_matrix(coo, csr_to_dense(res.csr))) << k;
  }
}

TEST(Verdict, Rendering) {
  EXPECT_EQ(Verdict::pass().to_string(), "ok");
  auto v = Verdict::fail("partial_CSR_rowptr", "slot 2");
  v.at_event(7);
  EXPECT_EQ(v.to_string(), "FAIL clause=partial_CSR_rowptr event=7 detail=\"slot 2\"");
}
