#pragma once

// The block family W used to force reducibility: closed-form dimension
// bounds, integer thresholds, the witness search over n = 3a + b, and an
// empirical dimension sampler for small shapes.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetcomm/commutant.hpp"
#include "jetcomm/errors.hpp"
#include "jetcomm/linalg.hpp"
#include "jetcomm/random.hpp"
#include "jetcomm/truncmat.hpp"

namespace jetcomm {

using Int = std::int64_t;

/// floor(sqrt(v)) computed in integers.
inline Int isqrt_floor(Int v) {
  if (v < 0) throw std::domain_error("isqrt_floor of a negative number");
  auto r = static_cast<Int>(std::sqrt(static_cast<long double>(v)));
  while (r > 0 && r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

/// ceil(sqrt(v)) computed in integers.
inline Int isqrt_ceil(Int v) {
  Int r = isqrt_floor(v);
  return r * r == v ? r : r + 1;
}

inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

/// Sizes of a 4x4 block decomposition with blocks a, a, a, b.
struct BlockShape {
  Int a = 1;
  Int b = 0;
  Int k = 1;

  [[nodiscard]] Int n() const { return 3 * a + b; }
  void validate() const {
    if (a < 1 || b < 0 || k < 1) throw PreconditionError("block shape needs a >= 1, b >= 0, k >= 1");
  }
};

struct ReducibilityReport {
  BlockShape shape;
  Int dimW_bound = 0;
  Int dimCA0 = 0;
  Int dimV_bound = 0;
  Int expected_dim = 0;
  Int inequality_value = 0;
  Int delta = 0;
  bool reducible = false;
};

/// Discriminant 4a^2 - 16(k+1)a + (k+1)^2 + 4(k+2) of the quadratic in b.
inline Int delta_k(Int k, Int a) { return 4 * a * a - 16 * (k + 1) * a + (k + 1) * (k + 1) + 4 * (k + 2); }

/// b^2 + (k+1-2a)b + 3a(k+1) - k - 2; the shape forces reducibility iff this is <= 0.
inline Int inequality_value(Int k, Int a, Int b) { return b * b + (k + 1 - 2 * a) * b + 3 * a * (k + 1) - k - 2; }

inline ReducibilityReport bounds(const BlockShape& shape) {
  shape.validate();
  const Int a = shape.a;
  const Int b = shape.b;
  const Int k = shape.k;
  const Int n = shape.n();
  ReducibilityReport r;
  r.shape = shape;
  r.dimW_bound = 12 * a * a + 10 * a * b + b * b + (k - 1) * n * n + k;
  r.dimCA0 = 3 * a * a + 2 * a * b + b * b;
  r.dimV_bound = n * n - r.dimCA0 + r.dimW_bound + 2;
  r.expected_dim = (k + 1) * (n * n + n);
  r.inequality_value = inequality_value(k, a, b);
  r.delta = delta_k(k, a);
  r.reducible = r.inequality_value <= 0;
  if (r.reducible != (r.dimV_bound >= r.expected_dim)) {
    throw InvariantViolation("bounds: inequality and dimension comparison disagree");
  }
  return r;
}

struct Thresholds {
  Int k = 1;
  Int mu = 0;    // least a with a nonnegative discriminant on the upper branch
  Int beta = 0;  // least a from which sqrt(delta) >= 4
  Int N = 0;     // every n >= N has a witness
};

/// c + ceil(sqrt(d) / 2) without floating point: ceil(sqrt(d)/2) = ceil(ceil(sqrt(d)) / 2).
inline Int ceil_half_root_plus(Int c, Int d) { return c + ceil_div(isqrt_ceil(d), 2); }

inline Thresholds thresholds(Int k) {
  if (k < 1) throw PreconditionError("thresholds need k >= 1");
  Thresholds t;
  t.k = k;
  const Int k1 = k + 1;
  t.mu = ceil_half_root_plus(2 * k1, 15 * k1 * k1 - 4 * (k + 2));
  t.beta = ceil_half_root_plus(2 * k1, 15 * k1 * k1 - 4 * k1 + 12);
  // ceil(4 beta - (k+5)/2) = 4 beta - floor((k+5)/2)
  t.N = 4 * t.beta - floor_div(k + 5, 2);
  return t;
}

/// Integers b >= 0 with inequality_value(k, a, b) <= 0, as a closed interval.
inline std::optional<std::pair<Int, Int>> b_interval(Int k, Int a) {
  const Int d = delta_k(k, a);
  if (d < 0) return std::nullopt;
  const Int c = 2 * a - k - 1;
  const Int s = isqrt_floor(d);
  Int lo = ceil_div(c - s, 2);
  Int hi = floor_div(c + s, 2);
  // isqrt rounding can leave the ends one step off the exact root
  while (inequality_value(k, a, lo - 1) <= 0) --lo;
  while (lo <= hi && inequality_value(k, a, lo) > 0) ++lo;
  while (inequality_value(k, a, hi + 1) <= 0) ++hi;
  while (hi >= lo && inequality_value(k, a, hi) > 0) --hi;
  if (lo < 0) lo = 0;
  if (lo > hi) return std::nullopt;
  return std::make_pair(lo, hi);
}

struct TableRow {
  Int n = 0;
  std::optional<BlockShape> witness;
};

/// For n = 1..n_max, the decomposition n = 3a + b with the smallest a >= mu_k
/// that forces reducibility, if any.
inline std::vector<TableRow> reducible_table(Int k, Int n_max) {
  const auto th = thresholds(k);
  std::vector<TableRow> rows;
  for (Int n = 1; n <= n_max; ++n) {
    TableRow row{n, std::nullopt};
    for (Int a = th.mu; 3 * a <= n; ++a) {
      const Int b = n - 3 * a;
      auto iv = b_interval(k, a);
      if (iv && iv->first <= b && b <= iv->second) {
        row.witness = BlockShape{a, b, k};
        break;
      }
    }
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

struct BlockOffsets {
  std::size_t a, b;
  [[nodiscard]] std::size_t start(int block) const { return static_cast<std::size_t>(block) * a; }
  [[nodiscard]] std::size_t size(int block) const { return block == 3 ? b : a; }
};

/// Whether (r, c) falls in block (3,1) (1-based block labels).
inline bool in_block_31(const BlockOffsets& o, std::size_t r, std::size_t c) {
  return r >= 2 * o.a && r < 3 * o.a && c < o.a;
}

}  // namespace detail

/// The fixed nilpotent A_0 with identity blocks at (1,2) and (2,3).
template <ExactField F>
Matrix<F> w_constant_a(const F& field, const BlockShape& shape) {
  shape.validate();
  const auto a = static_cast<std::size_t>(shape.a);
  Matrix<F> m(field, static_cast<std::size_t>(shape.n()), static_cast<std::size_t>(shape.n()));
  for (std::size_t i = 0; i < a; ++i) {
    m(i, a + i) = field.one();
    m(a + i, 2 * a + i) = field.one();
  }
  return m;
}

/// Random A(t) of the family: fixed A_0, A_1 with zero (3,1) block, A_2..A_k free.
template <ExactField F>
MatPoly<F> w_random_a(const F& field, const BlockShape& shape, Rng& rng) {
  const auto n = static_cast<std::size_t>(shape.n());
  const auto k = static_cast<std::size_t>(shape.k);
  detail::BlockOffsets o{static_cast<std::size_t>(shape.a), static_cast<std::size_t>(shape.b)};
  auto a = MatPoly<F>::random(field, n, k, rng);
  a.coeff(0) = w_constant_a(field, shape);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (detail::in_block_31(o, r, c)) a.coeff(1)(r, c) = field.zero();
    }
  }
  return a;
}

/// Number of free entries on the A side: A_1 minus its (3,1) block, plus A_2..A_k.
inline Int w_a_side_params(const BlockShape& shape) {
  const Int n = shape.n();
  return n * n - shape.a * shape.a + (shape.k - 1) * n * n;
}

/// Columns are the B-side coordinates: the four free blocks of B_0 (the
/// first appearing twice), B_1 minus its (3,1) block, and B_2..B_k.
template <ExactField F>
Matrix<F> w_b_parameter_matrix(const F& field, const BlockShape& shape) {
  const auto n = static_cast<std::size_t>(shape.n());
  const auto k = static_cast<std::size_t>(shape.k);
  const std::size_t nn = n * n;
  detail::BlockOffsets o{static_cast<std::size_t>(shape.a), static_cast<std::size_t>(shape.b)};
  std::vector<std::vector<std::size_t>> cols;  // coordinates set to 1 in each parameter direction

  auto block_params = [&](int bi, int bj, std::vector<std::pair<int, int>> also) {
    for (std::size_t r = 0; r < o.size(bi); ++r) {
      for (std::size_t c = 0; c < o.size(bj); ++c) {
        std::vector<std::size_t> coords{(o.start(bi) + r) * n + o.start(bj) + c};
        for (auto [ai, aj] : also) coords.push_back((o.start(ai) + r) * n + o.start(aj) + c);
        cols.push_back(std::move(coords));
      }
    }
  };
  block_params(0, 1, {{1, 2}});
  block_params(0, 2, {});
  block_params(0, 3, {});
  block_params(3, 2, {});
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!detail::in_block_31(o, r, c)) cols.push_back({nn + r * n + c});
    }
  }
  for (std::size_t s = 2; s <= k; ++s) {
    for (std::size_t e = 0; e < nn; ++e) cols.push_back({s * nn + e});
  }

  Matrix<F> p(field, nn * (k + 1), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (auto idx : cols[j]) p(idx, j) = field.one();
  }
  return p;
}

/// Kernel of the commutation system restricted to the B-side parameters at A.
template <ExactField F>
SubspaceBasis<F> w_b_solutions(const MatPoly<F>& a, const Matrix<F>& params) {
  return kernel_basis(commutator_operator(a) * params);
}

/// A random commuting pair of the family W.
template <ExactField F>
std::pair<MatPoly<F>, MatPoly<F>> sample_W_point(const F& field, const BlockShape& shape, Rng& rng) {
  shape.validate();
  const auto n = static_cast<std::size_t>(shape.n());
  const auto k = static_cast<std::size_t>(shape.k);
  const auto params = w_b_parameter_matrix(field, shape);
  for (int attempt = 0; attempt < 16; ++attempt) {
    auto a = w_random_a(field, shape, rng);
    const auto sol = w_b_solutions(a, params);
    if (sol.dim() == 0) continue;
    Vec<F> coeffs(params.cols(), field.zero());
    for (const auto& v : sol.vectors()) {
      const auto c = field.random(rng);
      for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = field.add(coeffs[i], field.mul(c, v[i]));
    }
    Vec<F> flat(params.rows(), field.zero());
    for (std::size_t r = 0; r < params.rows(); ++r) {
      for (std::size_t c = 0; c < params.cols(); ++c) {
        if (!field.is_zero(params(r, c))) flat[r] = field.add(flat[r], field.mul(params(r, c), coeffs[c]));
      }
    }
    auto b = unflatten(field, n, k, flat);
    if (!commutator(a, b).is_zero()) throw InvariantViolation("sample_W_point produced a non-commuting pair");
    return {std::move(a), std::move(b)};
  }
  throw std::runtime_error("sample_W_point: resample budget exhausted");
}

/// max over trials of (A-side parameters + dimension of the B-side solution space).
template <ExactField F>
Int empirical_dimW(const F& field, const BlockShape& shape, std::size_t trials, std::uint64_t seed) {
  shape.validate();
  const auto params = w_b_parameter_matrix(field, shape);
  const Int a_side = w_a_side_params(shape);
  Int best = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const auto a = w_random_a(field, shape, rng);
    best = std::max(best, a_side + static_cast<Int>(w_b_solutions(a, params).dim()));
  }
  return best;
}

}  // namespace jetcomm
