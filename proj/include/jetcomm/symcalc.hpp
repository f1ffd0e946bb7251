#pragma once

// Noncommutative symmetric sums S(x^[d], y_1, ..., y_t), the operators
// d_{y_1...y_t}(q(x)), and the two directions of the commutant parametrization
// B(t) = sum_j q_j(A(t)) t^j, all evaluated at concrete matrices.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "jetcomm/errors.hpp"
#include "jetcomm/linalg.hpp"
#include "jetcomm/matrix.hpp"
#include "jetcomm/truncmat.hpp"
#include "jetcomm/unipoly.hpp"

namespace jetcomm {

/// Visits every distinct arrangement of a multiset of labels, in
/// lexicographic order. Returns the number of arrangements visited.
inline std::size_t for_each_arrangement(std::vector<long> labels,
                                        const std::function<void(const std::vector<long>&)>& visit) {
  std::sort(labels.begin(), labels.end());
  std::size_t count = 0;
  do {
    visit(labels);
    ++count;
  } while (std::next_permutation(labels.begin(), labels.end()));
  return count;
}

/// Label used for the distinguished variable x.
inline constexpr long kSymX = -1;

/// Sum over all distinct arrangements of {x repeated x_mult} + ys, where ys
/// are given as indices into table; equal indices denote the same variable.
template <ExactField F>
Matrix<F> sym_sum_indexed(const Matrix<F>& x, long x_mult, std::span<const Matrix<F>> table,
                          std::span<const std::size_t> ys) {
  Matrix<F> total(x.field(), x.rows(), x.cols());
  if (x_mult < 0) return total;
  std::vector<long> labels(static_cast<std::size_t>(x_mult), kSymX);
  for (auto y : ys) labels.push_back(static_cast<long>(y));
  const auto id = Matrix<F>::identity(x.field(), x.rows());
  for_each_arrangement(labels, [&](const std::vector<long>& word) {
    Matrix<F> prod = id;
    for (long l : word) prod = prod * (l == kSymX ? x : table[static_cast<std::size_t>(l)]);
    total += prod;
  });
  return total;
}

template <ExactField F>
struct SymArgs {
  Matrix<F> x;
  long x_mult = 0;
  std::vector<Matrix<F>> ys;
};

/// S(x^[x_mult], ys). Entries of ys that are equal as matrices are treated as
/// the same variable; x is always distinct from every y.
template <ExactField F>
Matrix<F> sym_sum(const SymArgs<F>& args) {
  std::vector<Matrix<F>> distinct;
  std::vector<std::size_t> idx;
  for (const auto& y : args.ys) {
    auto it = std::find(distinct.begin(), distinct.end(), y);
    idx.push_back(static_cast<std::size_t>(it - distinct.begin()));
    if (it == distinct.end()) distinct.push_back(y);
  }
  return sym_sum_indexed<F>(args.x, args.x_mult, distinct, idx);
}

/// d_{ys}(q)(x) = sum_j c_j S(x^[j-t], ys) with t = |ys|.
template <ExactField F>
Matrix<F> d_op_indexed(const UniPoly<F>& q, std::span<const Matrix<F>> table, std::span<const std::size_t> ys,
                       const Matrix<F>& x) {
  const F& f = x.field();
  Matrix<F> total(f, x.rows(), x.cols());
  const long t = static_cast<long>(ys.size());
  for (long j = 0; j <= q.degree(); ++j) {
    const auto c = q.coeff(static_cast<std::size_t>(j));
    if (f.is_zero(c) || j - t < 0) continue;
    total += sym_sum_indexed(x, j - t, table, ys).scaled(c);
  }
  return total;
}

template <ExactField F>
Matrix<F> d_op(const UniPoly<F>& q, const std::vector<Matrix<F>>& ys, const Matrix<F>& x) {
  std::vector<Matrix<F>> distinct;
  std::vector<std::size_t> idx;
  for (const auto& y : ys) {
    auto it = std::find(distinct.begin(), distinct.end(), y);
    idx.push_back(static_cast<std::size_t>(it - distinct.begin()));
    if (it == distinct.end()) distinct.push_back(y);
  }
  return d_op_indexed<F>(q, distinct, idx, x);
}

/// Partitions of total into positive parts i_1 >= i_2 >= ... (all lengths).
inline std::vector<std::vector<std::size_t>> partitions(std::size_t total) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t max_part) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    for (std::size_t p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(remaining - p, p);
      cur.pop_back();
    }
  };
  if (total > 0) rec(total, total);
  return out;
}

/// Coefficient of t^l in A(t)^i, from the symmetric-sum expansion.
template <ExactField F>
Matrix<F> g_coeff(std::size_t i, std::size_t l, std::span<const Matrix<F>> a_coeffs) {
  const auto& a0 = a_coeffs[0];
  if (l == 0) return power(a0, i);
  if (l >= a_coeffs.size()) throw std::invalid_argument("g_coeff: l exceeds truncation order");
  Matrix<F> total(a0.field(), a0.rows(), a0.cols());
  for (const auto& part : partitions(l)) {
    const long r = static_cast<long>(part.size());
    total += sym_sum_indexed(a0, static_cast<long>(i) - r, a_coeffs, part);
  }
  return total;
}

namespace detail {

/// sum_{r} sum_{i_1>=...>=i_r>0, sum = m} d_{A_{i_1}...A_{i_r}}(q(A_0))
template <ExactField F>
Matrix<F> d_correction(const UniPoly<F>& q, std::span<const Matrix<F>> a_coeffs, std::size_t m) {
  const auto& a0 = a_coeffs[0];
  Matrix<F> total(a0.field(), a0.rows(), a0.cols());
  for (const auto& part : partitions(m)) total += d_op_indexed(q, a_coeffs, part, a0);
  return total;
}

}  // namespace detail

/// B(t) with B_0 = q_0(A_0) and, for s >= 1,
///   B_s = sum_{j<s} sum_{partitions of s-j} d_{A_{i_1}..A_{i_r}}(q_j(A_0)) + q_s(A_0).
/// Equals sum_j q_j(A(t)) t^j in the truncated ring.
template <ExactField F>
MatPoly<F> b_from_q(const std::vector<UniPoly<F>>& qs, const MatPoly<F>& a) {
  const std::size_t k = a.k();
  if (qs.size() != k + 1) throw std::invalid_argument("b_from_q needs exactly k+1 polynomials");
  std::span<const Matrix<F>> ac(a.coeffs());
  MatPoly<F> b(a.field(), a.n(), k);
  for (std::size_t s = 0; s <= k; ++s) {
    Matrix<F> bs = qs[s](ac[0]);
    for (std::size_t j = 0; j < s; ++j) bs += detail::d_correction(qs[j], ac, s - j);
    b.coeff(s) = std::move(bs);
  }
  return b;
}

/// Inverts b_from_q when A_0 is 1-regular: the unique q_0..q_k of degree
/// <= n-1 with b_from_q(qs, A) = B.
template <ExactField F>
std::vector<UniPoly<F>> q_from_b(const MatPoly<F>& a, const MatPoly<F>& b) {
  a.require_compatible(b);
  const F& f = a.field();
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  std::span<const Matrix<F>> ac(a.coeffs());
  if (minpoly_dim(ac[0]).second != n) throw PreconditionError("q_from_b: A_0 is not 1-regular");

  // columns vec(A_0^i), i < n
  Matrix<F> basis(f, n * n, n);
  Matrix<F> pw = Matrix<F>::identity(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < n * n; ++e) basis(e, i) = pw.data()[e];
    pw = pw * ac[0];
  }

  std::vector<UniPoly<F>> qs;
  for (std::size_t s = 0; s <= k; ++s) {
    Matrix<F> residual = b.coeff(s);
    for (std::size_t j = 0; j < s; ++j) residual -= detail::d_correction(qs[j], ac, s - j);
    auto c = solve(basis, residual.data());
    if (!c) {
      throw NotInCommutantError(s, "q_from_b: B does not commute with A (no polynomial in A_0 at stage " +
                                       std::to_string(s) + ")");
    }
    qs.emplace_back(f, std::move(*c));
  }
  return qs;
}

}  // namespace jetcomm
