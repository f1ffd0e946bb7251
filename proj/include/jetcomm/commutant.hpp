#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "jetcomm/errors.hpp"
#include "jetcomm/linalg.hpp"
#include "jetcomm/matrix.hpp"
#include "jetcomm/symcalc.hpp"
#include "jetcomm/truncmat.hpp"

namespace jetcomm {

/// Matrix of the linear map B |-> [A, B] in the s-major flattened
/// coordinates of M_n(F)[t]/t^{k+1}.
template <ExactField F>
Matrix<F> commutator_operator(const MatPoly<F>& a) {
  const F& f = a.field();
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  const std::size_t blk = n * n;
  Matrix<F> op(f, blk * (k + 1), blk * (k + 1));
  for (std::size_t i = 0; i <= k; ++i) {
    const auto& ai = a.coeff(i);
    if (ai.is_zero()) continue;
    for (std::size_t j = 0; i + j <= k; ++j) {
      const std::size_t s = i + j;
      for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
          const std::size_t col = j * blk + p * n + q;
          // A_i e_{pq}: column q of the result is column p of A_i
          for (std::size_t r = 0; r < n; ++r) {
            auto& e = op(s * blk + r * n + q, col);
            e = f.add(e, ai(r, p));
          }
          // e_{pq} A_i: row p of the result is row q of A_i
          for (std::size_t c = 0; c < n; ++c) {
            auto& e = op(s * blk + p * n + c, col);
            e = f.sub(e, ai(q, c));
          }
        }
      }
    }
  }
  return op;
}

/// Basis of {B : [A(t), B(t)] = 0}.
template <ExactField F>
SubspaceBasis<F> commutant_basis(const MatPoly<F>& a) {
  return kernel_basis(commutator_operator(a), Coordinates::matpoly(a.n(), a.k()));
}

template <ExactField F>
bool is_one_regular(const Matrix<F>& a0) {
  if (!a0.is_square()) throw std::invalid_argument("is_one_regular needs a square matrix");
  return minpoly_dim(a0).second == a0.rows();
}

/// span{A(t)^i t^j : 0 <= i < n, 0 <= j <= k}.
template <ExactField F>
SubspaceBasis<F> power_span(const MatPoly<F>& a) {
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  std::vector<Vec<F>> vs;
  MatPoly<F> pw = MatPoly<F>::identity(a.field(), n, k);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= k; ++j) vs.push_back(flatten(pw.shifted_up(j)));
    pw = pw * a;
  }
  return SubspaceBasis<F>::span(a.field(), n * n * (k + 1), vs, Coordinates::matpoly(n, k));
}

/// Basis (in flattened coordinates) of the unital algebra generated by gens
/// inside M_n(F): breadth-first closure of span{I} under left
/// multiplication by the generators.
template <ExactField F>
IncrementalSpan<F> algebra_span(const F& field, std::size_t n, const std::vector<Matrix<F>>& gens) {
  IncrementalSpan<F> span(field, n * n);
  std::deque<Matrix<F>> frontier;
  auto id = Matrix<F>::identity(field, n);
  span.insert(id.data());
  frontier.push_back(std::move(id));
  while (!frontier.empty()) {
    Matrix<F> e = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : gens) {
      Matrix<F> prod = g * e;
      if (span.insert(prod.data())) frontier.push_back(std::move(prod));
    }
  }
  return span;
}

template <ExactField F>
std::size_t algebra_dim(const F& field, std::size_t n, const std::vector<Matrix<F>>& gens) {
  return algebra_span(field, n, gens).dim();
}

template <ExactField F>
std::size_t algebra_dim(const std::vector<Matrix<F>>& gens) {
  if (gens.empty()) throw std::invalid_argument("algebra_dim: pass field and size explicitly for no generators");
  return algebra_dim(gens.front().field(), gens.front().rows(), gens);
}

/// dim_F F[A, B, C] with C the image of t, computed on the block-Toeplitz embedding.
template <ExactField F>
std::size_t triple_algebra_dim(const MatPoly<F>& a, const MatPoly<F>& b) {
  const auto t = MatPoly<F>::t(a.field(), a.n(), a.k());
  return algebra_dim(std::vector<Matrix<F>>{embed_toeplitz(a), embed_toeplitz(b), embed_toeplitz(t)});
}

/// For E = F[gens, t] inside M_n(F)[t]/t^{k+1} and E_i its elements of
/// valuation >= i, returns [dim E_0/E_1, ..., dim E_k/E_{k+1}].
template <ExactField F>
std::vector<std::size_t> filtration_dims(const F& field, std::size_t n, std::size_t k,
                                         const std::vector<MatPoly<F>>& gens) {
  std::vector<MatPoly<F>> all = gens;
  all.push_back(MatPoly<F>::t(field, n, k));
  IncrementalSpan<F> span(field, n * n * (k + 1));
  std::deque<MatPoly<F>> frontier;
  auto id = MatPoly<F>::identity(field, n, k);
  span.insert(flatten(id));
  frontier.push_back(std::move(id));
  while (!frontier.empty()) {
    MatPoly<F> e = std::move(frontier.front());
    frontier.pop_front();
    for (const auto& g : all) {
      MatPoly<F> prod = g * e;
      if (span.insert(flatten(prod))) frontier.push_back(std::move(prod));
    }
  }
  // In reduced echelon form with s-major coordinates, the rows pivoting in
  // block i have valuation exactly i and those pivoting at blocks >= i span E_i.
  auto echelon = SubspaceBasis<F>::span(field, n * n * (k + 1), span.rows());
  std::vector<std::size_t> dims(k + 1, 0);
  for (auto p : echelon.pivots()) ++dims[p / (n * n)];
  return dims;
}

/// Outcome of evaluating the five equivalent characterizations of A_0
/// being 1-regular.
struct Thm24Report {
  bool one_regular = false;
  bool powers_independent = false;
  std::size_t dim_FAt = 0;
  std::size_t commutant_dim = 0;
  bool commutant_equals_power_span = false;
  bool q_param_roundtrip_ok = false;

  std::size_t n = 0;
  std::size_t k = 0;
  [[nodiscard]] bool full_dim_FAt() const { return dim_FAt == n * (k + 1); }
};

/// Computes every condition independently; throws InvariantViolation if they disagree.
template <ExactField F>
Thm24Report thm24_battery(const MatPoly<F>& a) {
  const F& f = a.field();
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  const std::size_t full = n * (k + 1);
  Thm24Report rep;
  rep.n = n;
  rep.k = k;

  rep.one_regular = is_one_regular(a.coeff(0));

  const auto powers = power_span(a);
  rep.powers_independent = powers.dim() == full;

  const auto t = MatPoly<F>::t(f, n, k);
  rep.dim_FAt = algebra_dim(std::vector<Matrix<F>>{embed_toeplitz(a), embed_toeplitz(t)});

  const auto comm = commutant_basis(a);
  rep.commutant_dim = comm.dim();
  rep.commutant_equals_power_span = comm == powers;

  // Image of (q_0..q_k) |-> b_from_q over unit coefficient vectors.
  std::vector<Vec<F>> image;
  for (std::size_t j = 0; j <= k; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<UniPoly<F>> qs(k + 1, UniPoly<F>(f));
      Vec<F> c(i + 1, f.zero());
      c[i] = f.one();
      qs[j] = UniPoly<F>(f, std::move(c));
      image.push_back(flatten(b_from_q(qs, a)));
    }
  }
  const auto param = SubspaceBasis<F>::span(f, n * n * (k + 1), image);
  bool ok = param.contains(comm);
  if (ok && rep.one_regular) {
    for (const auto& v : comm.vectors()) {
      auto b = unflatten(f, n, k, v);
      if (b_from_q(q_from_b(a, b), a) != b) {
        ok = false;
        break;
      }
    }
  }
  rep.q_param_roundtrip_ok = ok;

  const bool c1 = rep.one_regular;
  const bool all_agree = rep.powers_independent == c1 && rep.full_dim_FAt() == c1 &&
                         rep.commutant_equals_power_span == c1 && rep.q_param_roundtrip_ok == c1 &&
                         (!c1 || rep.commutant_dim == full);
  if (!all_agree) {
    throw InvariantViolation("equivalent characterizations of 1-regularity disagree (n=" + std::to_string(n) +
                             ", k=" + std::to_string(k) + ")");
  }
  return rep;
}

/// Matrix of Z |-> [A0, Z] on row-major n^2 coordinates.
template <ExactField F>
Matrix<F> ad_operator(const Matrix<F>& a0) {
  return commutator_operator(MatPoly<F>::constant(a0, 0));
}

/// Whether M = [A0, Z] for some Z.
template <ExactField F>
bool ad_image_contains(const Matrix<F>& a0, const Matrix<F>& m) {
  return solve(ad_operator(a0), m.data()).has_value();
}

/// [A_1, B_k] + [A_2, B_{k-1}] + ... + [A_k, B_1].
template <ExactField F>
Matrix<F> cross_commutator_sum(const MatPoly<F>& a, const MatPoly<F>& b) {
  const std::size_t k = a.k();
  Matrix<F> sum(a.field(), a.n(), a.n());
  for (std::size_t i = 1; i <= k; ++i) sum += commutator(a.coeff(i), b.coeff(k + 1 - i));
  return sum;
}

/// Solves [A_0, B_{k+1}] = -([A_1, B_k] + ... + [A_k, B_1] + [A_{k+1}, B_0]).
/// Returns the particular solution with free variables zero, or nullopt
/// when the right side is not in the image of ad(A_0).
template <ExactField F>
std::optional<Matrix<F>> lift_pair(const MatPoly<F>& a, const MatPoly<F>& b, const Matrix<F>& a_next) {
  a.require_compatible(b);
  if (!commutator(a, b).is_zero()) throw PreconditionError("lift_pair: input pair does not commute");
  Matrix<F> rhs = cross_commutator_sum(a, b) + commutator(a_next, b.coeff(0));
  auto z = solve(ad_operator(a.coeff(0)), (-rhs).data());
  if (!z) return std::nullopt;
  return Matrix<F>(a.field(), a.n(), a.n(), std::move(*z));
}

/// The order-(k+1) pair obtained by appending A_next and B_next.
template <ExactField F>
std::pair<MatPoly<F>, MatPoly<F>> extend_pair(const MatPoly<F>& a, const MatPoly<F>& b, const Matrix<F>& a_next,
                                              const Matrix<F>& b_next) {
  auto a2 = a.extend(a.k() + 1);
  auto b2 = b.extend(b.k() + 1);
  a2.coeff(a.k() + 1) = a_next;
  b2.coeff(b.k() + 1) = b_next;
  return {std::move(a2), std::move(b2)};
}

}  // namespace jetcomm
