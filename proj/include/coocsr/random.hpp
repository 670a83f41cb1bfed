#pragma once

// Seeded random COO matrices with controllable duplicate structure.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "coocsr/coo.hpp"
#include "coocsr/scalars.hpp"

namespace coocsr {

enum class ValueRegime {
  /// Integers in [-int_bound, int_bound]; sums of a few never round.
  exact_ints,
  /// Finite values of both signs spread over many binades; sums round.
  full,
};

struct GenParams {
  std::uint64_t seed = 0;
  Index rows = 0;
  Index cols = 0;
  std::size_t nnz = 0;
  double dup_prob = 0.0;
  ValueRegime regime = ValueRegime::exact_ints;
  int int_bound = 100;
  /// Upper bound on entries per coordinate; 0 means unlimited.
  std::size_t max_multiplicity = 0;
};

/// splitmix64 finalizer; derives independent per-case seeds.
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace detail {

// Distributions are drawn by hand so a seed means the same matrix with any
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : engine_() % n; }
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool chance(double p) { return unit() < p; }

 private:
  std::mt19937_64 engine_;
};

template <Scalar T>
T draw_value(Rng& rng, const GenParams& p) {
  if (p.regime == ValueRegime::exact_ints) {
    const auto span = static_cast<std::uint64_t>(2 * p.int_bound + 1);
    return static_cast<T>(static_cast<long long>(rng.below(span)) - p.int_bound);
  }
  const T mantissa = static_cast<T>(1.0 + rng.unit());
  const int exponent = static_cast<int>(rng.below(41)) - 20;
  const T v = std::ldexp(mantissa, exponent);
  return rng.chance(0.5) ? -v : v;
}

}  // namespace detail

/// Each entry after the first reuses an already emitted coordinate with
/// probability dup_prob, otherwise takes a coordinate not used so far. When no
/// fresh coordinate is left it reuses one, and vice versa when every used
/// coordinate is at max_multiplicity.
template <Scalar T>
CooMatrix<T> gen_random_coo(const GenParams& p) {
  if (p.rows < 0 || p.cols < 0) throw std::invalid_argument("negative dimensions");
  if (p.dup_prob < 0.0 || p.dup_prob > 1.0) throw std::invalid_argument("dup_prob outside [0, 1]");
  const auto cells = static_cast<std::uint64_t>(p.rows) * static_cast<std::uint64_t>(p.cols);
  if (p.nnz > 0 && cells == 0) throw std::invalid_argument("entries requested for an empty shape");

  detail::Rng rng(p.seed);
  CooMatrix<T> coo{p.rows, p.cols, {}};
  coo.entries.reserve(p.nnz);
  std::vector<Coord> used;  // first-emission order, for reproducible reuse picks
  std::map<Coord, std::size_t> multiplicity;

  auto pick_reuse = [&](Coord& out) {
    if (p.max_multiplicity == 0) {
      out = used[rng.below(used.size())];
      return true;
    }
    std::vector<Coord> candidates;
    for (const auto& c : used)
      if (multiplicity[c] < p.max_multiplicity) candidates.push_back(c);
    if (candidates.empty()) return false;
    out = candidates[rng.below(candidates.size())];
    return true;
  };

  for (std::size_t k = 0; k < p.nnz; ++k) {
    const bool fresh_left = used.size() < cells;
    const bool want_reuse = (!used.empty() && rng.chance(p.dup_prob)) || !fresh_left;
    Coord c;
    if (!(want_reuse && pick_reuse(c))) {
      if (!fresh_left) throw std::invalid_argument("nnz cannot be reached under the multiplicity cap");
      do {
        c = Coord{static_cast<Index>(rng.below(static_cast<std::uint64_t>(p.rows))),
                  static_cast<Index>(rng.below(static_cast<std::uint64_t>(p.cols)))};
      } while (multiplicity.count(c));
      used.push_back(c);
    }
    ++multiplicity[c];
    coo.entries.push_back({c, detail::draw_value<T>(rng, p)});
  }
  return coo;
}

/// Random shape within the given maxima (dimensions may be 0), then a matrix.
struct CaseShape {
  Index max_rows = 8;
  Index max_cols = 8;
  std::size_t max_nnz = 16;
  double dup_prob = 0.3;
  ValueRegime regime = ValueRegime::exact_ints;
  std::size_t max_multiplicity = 0;
};

inline GenParams draw_case(std::uint64_t seed, const CaseShape& shape) {
  detail::Rng rng(seed);
  GenParams p;
  p.seed = mix_seed(seed, 0);
  p.rows = static_cast<Index>(rng.below(static_cast<std::uint64_t>(shape.max_rows + 1)));
  p.cols = static_cast<Index>(rng.below(static_cast<std::uint64_t>(shape.max_cols + 1)));
  p.nnz = p.rows * p.cols == 0 ? 0 : static_cast<std::size_t>(rng.below(shape.max_nnz + 1));
  if (shape.max_multiplicity)
    p.nnz = std::min<std::size_t>(p.nnz, static_cast<std::size_t>(p.rows * p.cols) * shape.max_multiplicity);
  p.dup_prob = shape.dup_prob;
  p.regime = shape.regime;
  p.max_multiplicity = shape.max_multiplicity;
  return p;
}

template <Scalar T>
CooMatrix<T> random_case(std::uint64_t seed, const CaseShape& shape) {
  return gen_random_coo<T>(draw_case(seed, shape));
}

}  // namespace coocsr
