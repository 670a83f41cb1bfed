#pragma once

// Floating-point formats, deterministic summation, and the brute-force
// "sum in any order and any association" oracle.

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <set>
#include <span>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "coocsr/errors.hpp"

namespace coocsr {

enum class ScalarFormat { binary32, binary64 };

template <typename T>
concept Scalar = std::same_as<T, float> || std::same_as<T, double>;

template <Scalar T>
inline constexpr ScalarFormat format_of =
    std::same_as<T, float> ? ScalarFormat::binary32 : ScalarFormat::binary64;

constexpr std::string_view to_string(ScalarFormat f) noexcept {
  return f == ScalarFormat::binary32 ? "binary32" : "binary64";
}

template <Scalar T>
using bits_t = std::conditional_t<std::same_as<T, float>, std::uint32_t, std::uint64_t>;

template <Scalar T>
constexpr bits_t<T> to_bits(T x) noexcept {
  return std::bit_cast<bits_t<T>>(x);
}

template <Scalar T>
constexpr T from_bits(bits_t<T> b) noexcept {
  return std::bit_cast<T>(b);
}

/// Bitwise equality: -0.0 != +0.0, and a NaN equals itself.
template <Scalar T>
constexpr bool bit_equal(T a, T b) noexcept {
  return to_bits(a) == to_bits(b);
}

template <Scalar T>
bool bit_equal(std::span<const T> a, std::span<const T> b) noexcept {
  return std::ranges::equal(a, b, [](T x, T y) { return bit_equal(x, y); });
}

/// IEEE-754 round-to-nearest-even addition in the width of T. The build
/// disables contraction, so this is never fused with a neighbouring multiply.
template <Scalar T>
constexpr T fp_add(T a, T b) noexcept {
  return a + b;
}

/// Left fold of fp_add starting from +0.0.
template <Scalar T>
T sum_left_to_right(std::span<const T> vals) noexcept {
  T acc = T{0};
  for (T v : vals) acc = fp_add(acc, v);
  return acc;
}

template <Scalar T>
T sum_left_to_right(const std::vector<T>& vals) noexcept {
  return sum_left_to_right(std::span<const T>(vals));
}

inline constexpr std::size_t default_sum_cap = 7;

/// A finite set of scalars under bitwise identity.
template <Scalar T>
class SumSet {
 public:
  SumSet() = default;
  explicit SumSet(std::set<bits_t<T>> bits) : bits_(std::move(bits)) {}

  void insert(T x) { bits_.insert(to_bits(x)); }
  bool contains(T x) const { return bits_.count(to_bits(x)) != 0; }
  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }

  std::vector<T> values() const {
    std::vector<T> out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(from_bits<T>(b));
    return out;
  }

  const std::set<bits_t<T>>& bits() const noexcept { return bits_; }

  friend bool operator==(const SumSet&, const SumSet&) = default;

 private:
  std::set<bits_t<T>> bits_;
};

/// Every value obtainable by adding `vals` once each, in any order and under
/// any binary association tree. Enumerates the distinct permutations of the
/// input; for each permutation an interval table collects the results of all
/// trees over every contiguous run.
template <Scalar T>
SumSet<T> sum_any_set(std::span<const T> vals, std::size_t max_len = default_sum_cap) {
  using B = bits_t<T>;
  const std::size_t n = vals.size();
  if (n > max_len) throw LengthCapExceeded(n, max_len);

  SumSet<T> result;
  if (n == 0) {
    result.insert(T{0});
    return result;
  }

  std::vector<B> perm(n);
  std::ranges::transform(vals, perm.begin(), [](T v) { return to_bits(v); });
  std::ranges::sort(perm);

  // table[i][len-1] holds sums of all trees over perm[i .. i+len).
  std::vector<std::vector<std::set<B>>> table(n, std::vector<std::set<B>>(n));
  std::set<B> all;
  do {
    for (std::size_t i = 0; i < n; ++i) {
      for (auto& s : table[i]) s.clear();
      table[i][0].insert(perm[i]);
    }
    for (std::size_t len = 2; len <= n; ++len) {
      for (std::size_t i = 0; i + len <= n; ++i) {
        auto& cell = table[i][len - 1];
        for (std::size_t left = 1; left < len; ++left) {
          const auto& ls = table[i][left - 1];
          const auto& rs = table[i + left][len - left - 1];
          for (B a : ls)
            for (B b : rs) cell.insert(to_bits(fp_add(from_bits<T>(a), from_bits<T>(b))));
        }
      }
    }
    all.insert(table[0][n - 1].begin(), table[0][n - 1].end());
  } while (std::ranges::next_permutation(perm).found);

  return SumSet<T>(std::move(all));
}

template <Scalar T>
SumSet<T> sum_any_set(const std::vector<T>& vals, std::size_t max_len = default_sum_cap) {
  return sum_any_set(std::span<const T>(vals), max_len);
}

template <Scalar T>
bool sum_any_member(std::span<const T> vals, T s, std::size_t max_len = default_sum_cap) {
  return sum_any_set(vals, max_len).contains(s);
}

template <Scalar T>
bool sum_any_member(const std::vector<T>& vals, T s, std::size_t max_len = default_sum_cap) {
  return sum_any_member(std::span<const T>(vals), s, max_len);
}

}  // namespace coocsr
