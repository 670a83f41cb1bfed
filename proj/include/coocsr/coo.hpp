#pragma once

// Coordinate-form sparse matrices.

#include <algorithm>
#include <cassert>
#include <compare>
#include <functional>
#include <cstddef>
#include <cstdint>
#include <span>
#include <tuple>
#include <vector>

#include "coocsr/scalars.hpp"

namespace coocsr {

using Index = std::int64_t;

/// Largest index a 32-bit unsigned word can hold; the default capacity bound.
inline constexpr Index default_index_bound = 4294967295;

struct Coord {
  Index row = 0;
  Index col = 0;

  friend constexpr bool operator==(const Coord&, const Coord&) = default;
  friend constexpr auto operator<=>(const Coord&, const Coord&) = default;
};

/// Row-major lexicographic order, non-strict.
constexpr bool coord_le(const Coord& a, const Coord& b) noexcept {
  return a.row < b.row || (a.row == b.row && a.col <= b.col);
}

template <Scalar T>
struct CooEntry {
  Coord coord;
  T value{};
};

template <Scalar T>
struct CooMatrix {
  Index rows = 0;
  Index cols = 0;
  std::vector<CooEntry<T>> entries;

  std::size_t size() const noexcept { return entries.size(); }
};

template <Scalar T>
bool coo_wellformed(const CooMatrix<T>& coo) noexcept {
  if (coo.rows < 0 || coo.cols < 0) return false;
  return std::ranges::all_of(coo.entries, [&](const CooEntry<T>& e) {
    return 0 <= e.coord.row && e.coord.row < coo.rows && 0 <= e.coord.col &&
           e.coord.col < coo.cols;
  });
}

template <Scalar T>
bool entries_sorted(std::span<const CooEntry<T>> entries) noexcept {
  for (std::size_t k = 1; k < entries.size(); ++k)
    if (!coord_le(entries[k - 1].coord, entries[k].coord)) return false;
  return true;
}

template <Scalar T>
bool entries_sorted(const CooMatrix<T>& coo) noexcept {
  return entries_sorted(std::span<const CooEntry<T>>(coo.entries));
}

/// Stable sort by coordinate. Entries sharing a coordinate keep their input
/// order, so folding duplicates left to right afterwards adds them in the
/// order they appeared in the unsorted input.
template <Scalar T>
CooMatrix<T> sort_entries(CooMatrix<T> coo) {
  std::ranges::stable_sort(coo.entries, std::less<>{}, &CooEntry<T>::coord);
  return coo;
}

/// Number of coordinate runs in a sorted entry list.
template <Scalar T>
Index count_distinct(std::span<const CooEntry<T>> entries) noexcept {
  assert(entries_sorted(entries) && "count_distinct requires sorted entries");
  if (entries.empty()) return 0;
  Index count = 1;
  for (std::size_t k = 1; k < entries.size(); ++k)
    if (entries[k - 1].coord != entries[k].coord) ++count;
  return count;
}

template <Scalar T>
Index count_distinct(const std::vector<CooEntry<T>>& entries) noexcept {
  return count_distinct(std::span<const CooEntry<T>>(entries));
}

template <Scalar T>
Index cd(const CooMatrix<T>& coo) noexcept {
  return count_distinct(coo.entries);
}

/// count_distinct of the first i entries.
template <Scalar T>
Index cd_upto(Index i, const CooMatrix<T>& coo) noexcept {
  assert(0 <= i && static_cast<std::size_t>(i) <= coo.entries.size());
  return count_distinct(std::span<const CooEntry<T>>(coo.entries).first(static_cast<std::size_t>(i)));
}

template <Scalar T>
CooMatrix<T> coo_upto(Index i, const CooMatrix<T>& coo) {
  assert(0 <= i && static_cast<std::size_t>(i) <= coo.entries.size());
  CooMatrix<T> out{coo.rows, coo.cols, {}};
  out.entries.assign(coo.entries.begin(), coo.entries.begin() + i);
  return out;
}

/// Same dimensions and the entries of one are a permutation of the other's,
/// comparing values bitwise.
template <Scalar T>
bool coo_equiv(const CooMatrix<T>& a, const CooMatrix<T>& b) {
  if (a.rows != b.rows || a.cols != b.cols || a.entries.size() != b.entries.size())
    return false;
  auto key = [](const CooEntry<T>& e) {
    return std::tuple{e.coord.row, e.coord.col, to_bits(e.value)};
  };
  auto canon = [&](const CooMatrix<T>& m) {
    std::vector<std::tuple<Index, Index, bits_t<T>>> keys;
    keys.reserve(m.entries.size());
    for (const auto& e : m.entries) keys.push_back(key(e));
    std::ranges::sort(keys);
    return keys;
  };
  return canon(a) == canon(b);
}

}  // namespace coocsr
