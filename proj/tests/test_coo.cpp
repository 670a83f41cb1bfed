#include "coocsr/coo.hpp"

#include <gtest/gtest.h>

#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

#include "coocsr/convert.hpp"
#include "fixtures.hpp"

using namespace coocsr;

namespace {

CooMatrix<double> random_coo(std::mt19937_64& rng, Index rows, Index cols, std::size_t n) {
  CooMatrix<double> coo{rows, cols, {}};
  for (std::size_t k = 0; k < n; ++k)
    coo.entries.push_back({{static_cast<Index>(rng() % static_cast<std::uint64_t>(rows)),
                            static_cast<Index>(rng() % static_cast<std::uint64_t>(cols))},
                           static_cast<double>(k)});
  return coo;
}

}  // namespace

TEST(CooWellformed, Examples) {
  EXPECT_TRUE(coo_wellformed(fixtures::example_coo()));
  EXPECT_TRUE(coo_wellformed(CooMatrix<double>{0, 0, {}}));
  EXPECT_FALSE(coo_wellformed(CooMatrix<double>{2, 2, {{{2, 0}, 1.0}}}));
  EXPECT_FALSE(coo_wellformed(CooMatrix<double>{2, 2, {{{0, -1}, 1.0}}}));
  EXPECT_FALSE(coo_wellformed(CooMatrix<double>{-1, 2, {}}));
}

TEST(CoordLe, RowMajor) {
  EXPECT_TRUE(coord_le({0, 5}, {1, 0}));
  EXPECT_TRUE(coord_le({1, 2}, {1, 2}));
  EXPECT_FALSE(coord_le({1, 3}, {1, 2}));
  EXPECT_FALSE(coord_le({2, 0}, {1, 9}));
}

TEST(SortEntries, ExampleIsAlreadySortedAndUnchanged) {
  const auto coo = fixtures::example_coo();
  EXPECT_TRUE(entries_sorted(coo));
  const auto sorted = sort_entries(coo);
  ASSERT_EQ(sorted.entries.size(), 20u);
  EXPECT_EQ(sorted.entries[0].value, 7.0);
  EXPECT_EQ(sorted.entries[1].value, 3.0);
}

TEST(SortEntries, KeepsDuplicatesInAppearanceOrder) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    auto coo = random_coo(rng, 3, 3, 20);
    const auto sorted = sort_entries(coo);
    EXPECT_TRUE(entries_sorted(sorted));
    EXPECT_TRUE(coo_equiv(coo, sorted));
    // Values are the original positions, so equal coordinates must ascend.
    for (std::size_t k = 1; k < sorted.entries.size(); ++k) {
      if (sorted.entries[k - 1].coord == sorted.entries[k].coord) {
        EXPECT_LT(sorted.entries[k - 1].value, sorted.entries[k].value);
      }
    }
  }
}

TEST(CountDistinct, Examples) {
  EXPECT_EQ(count_distinct(std::vector<CooEntry<double>>{}), 0);
  EXPECT_EQ(cd(fixtures::example_coo()), 19);
  EXPECT_EQ(count_distinct(std::vector<CooEntry<double>>{{{4, 4}, 1.0}}), 1);
  EXPECT_EQ(count_distinct(std::vector<CooEntry<double>>{{{0, 0}, 1.0}, {{0, 0}, 2.0}, {{0, 0}, 3.0}}), 1);
}

TEST(CooCount, Examples) {
  EXPECT_EQ(coo_count(CooMatrix<double>{3, 3, {}}), 0);
  EXPECT_EQ(coo_count(fixtures::example_coo()), 19);
  EXPECT_EQ(coo_count(CooMatrix<double>{1, 1, {{{0, 0}, 2.0}}}), 1);
}

TEST(CountDistinct, MatchesHashSetOracle) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rows = static_cast<Index>(1 + rng() % 6);
    const auto cols = static_cast<Index>(1 + rng() % 6);
    const auto sorted = sort_entries(random_coo(rng, rows, cols, rng() % 30));
    std::unordered_set<Index> seen;
    for (const auto& e : sorted.entries) seen.insert(e.coord.row * cols + e.coord.col);
    EXPECT_EQ(cd(sorted), static_cast<Index>(seen.size()));
    EXPECT_EQ(coo_count(sorted), static_cast<Index>(seen.size()));
  }
}

TEST(CdUpto, ExamplesAndMonotone) {
  const auto coo = fixtures::example_coo();
  EXPECT_EQ(cd_upto(0, coo), 0);
  EXPECT_EQ(cd_upto(1, coo), 1);
  EXPECT_EQ(cd_upto(2, coo), 1);
  EXPECT_EQ(cd_upto(4, coo), 3);
  EXPECT_EQ(cd_upto(20, coo), 19);
  for (Index i = 1; i <= 20; ++i) {
    const auto step = cd_upto(i, coo) - cd_upto(i - 1, coo);
    EXPECT_TRUE(step == 0 || step == 1) << i;
  }
}

TEST(CooUpto, KeepsDimensionsAndPrefix) {
  const auto coo = fixtures::example_coo();
  const auto pre = coo_upto(4, coo);
  EXPECT_EQ(pre.rows, 6);
  EXPECT_EQ(pre.cols, 6);
  ASSERT_EQ(pre.entries.size(), 4u);
  EXPECT_EQ(pre.entries[3].coord, (Coord{1, 0}));
  EXPECT_TRUE(coo_upto(0, coo).entries.empty());
}

TEST(CooEquiv, PermutationAndBitwiseValues) {
  const CooMatrix<double> a{2, 2, {{{0, 0}, 1.0}, {{1, 1}, 2.0}}};
  const CooMatrix<double> b{2, 2, {{{1, 1}, 2.0}, {{0, 0}, 1.0}}};
  EXPECT_TRUE(coo_equiv(a, b));
  EXPECT_FALSE(coo_equiv(a, CooMatrix<double>{2, 3, a.entries}));
  EXPECT_FALSE(coo_equiv(CooMatrix<double>{1, 1, {{{0, 0}, 0.0}}}, CooMatrix<double>{1, 1, {{{0, 0}, -0.0}}}));
}

#ifndef NDEBUG
TEST(CountDistinctDeathTest, RejectsUnsortedInput) {
  const std::vector<CooEntry<double>> unsorted{{{1, 0}, 1.0}, {{0, 0}, 1.0}};
  EXPECT_DEATH(count_distinct(unsorted), "sorted");
}
#endif
