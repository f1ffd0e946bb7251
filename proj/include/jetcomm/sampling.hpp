#pragma once

// Random generators for the test sweeps and CLI batch drivers. Every
// generator guarantees its advertised property by construction plus a
// rejection check, rather than relying on genericity.

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "jetcomm/commutant.hpp"
#include "jetcomm/linalg.hpp"
#include "jetcomm/matrix.hpp"
#include "jetcomm/random.hpp"
#include "jetcomm/symcalc.hpp"
#include "jetcomm/truncmat.hpp"
#include "jetcomm/unipoly.hpp"

namespace jetcomm {

inline constexpr int kMaxRejections = 1000;

/// A random invertible matrix and its inverse.
template <ExactField F>
std::pair<Matrix<F>, Matrix<F>> random_invertible(const F& field, std::size_t n, Rng& rng) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    auto h = Matrix<F>::random(field, n, n, rng);
    if (auto inv = inverse(h)) return {std::move(h), std::move(*inv)};
  }
  throw std::runtime_error("random_invertible: rejection budget exhausted");
}

/// p(C) conjugated by a random invertible matrix, where C is the companion
/// matrix of a random monic polynomial of degree n and p is random.
template <ExactField F>
Matrix<F> random_one_regular(const F& field, std::size_t n, Rng& rng) {
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    auto c = companion_matrix(UniPoly<F>::random_monic(field, n, rng));
    auto p = UniPoly<F>::random(field, n > 0 ? n - 1 : 0, rng);
    if (p.degree() < 1) p = UniPoly<F>::x(field);
    auto [h, h_inv] = random_invertible(field, n, rng);
    Matrix<F> m = h * p(c) * h_inv;
    if (is_one_regular(m)) return m;
  }
  throw std::runtime_error("random_one_regular: rejection budget exhausted");
}

/// A conjugate of (lambda I_2) + M' for random lambda and random M' of size
/// n-2, so the minimal polynomial has degree < n. Requires n >= 2.
template <ExactField F>
Matrix<F> random_non_one_regular(const F& field, std::size_t n, Rng& rng) {
  if (n < 2) throw std::invalid_argument("every 1x1 matrix is 1-regular");
  const auto lambda = field.random(rng);
  Matrix<F> core = Matrix<F>::identity(field, 2).scaled(lambda);
  if (n > 2) core = direct_sum(core, Matrix<F>::random(field, n - 2, n - 2, rng));
  auto [h, h_inv] = random_invertible(field, n, rng);
  Matrix<F> m = h * core * h_inv;
  if (is_one_regular(m)) throw InvariantViolation("random_non_one_regular produced a 1-regular matrix");
  return m;
}

/// A(t) with the given constant term and random higher coefficients.
template <ExactField F>
MatPoly<F> random_with_constant(const Matrix<F>& a0, std::size_t k, Rng& rng) {
  auto a = MatPoly<F>::random(a0.field(), a0.rows(), k, rng);
  a.coeff(0) = a0;
  return a;
}

/// Random element of the commutant of A: a random combination of a basis.
template <ExactField F>
MatPoly<F> random_commuting(const MatPoly<F>& a, Rng& rng) {
  const F& f = a.field();
  const auto basis = commutant_basis(a);
  Vec<F> v(a.n() * a.n() * (a.k() + 1), f.zero());
  for (const auto& b : basis.vectors()) {
    const auto c = f.random(rng);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f.add(v[i], f.mul(c, b[i]));
  }
  return unflatten(f, a.n(), a.k(), v);
}

/// Random B(t) commuting with A(t) whose constant term lies in span(b0_span);
/// B_1..B_k are unconstrained apart from commutation.
template <ExactField F>
MatPoly<F> random_commuting_with_constant_in(const MatPoly<F>& a, const std::vector<Matrix<F>>& b0_span, Rng& rng) {
  const F& f = a.field();
  const std::size_t nn = a.n() * a.n();
  const std::size_t total = nn * (a.k() + 1);
  Matrix<F> params(f, total, b0_span.size() + total - nn);
  for (std::size_t c = 0; c < b0_span.size(); ++c) {
    for (std::size_t e = 0; e < nn; ++e) params(e, c) = b0_span[c].data()[e];
  }
  for (std::size_t e = nn; e < total; ++e) params(e, b0_span.size() + e - nn) = f.one();
  const auto sol = kernel_basis(commutator_operator(a) * params);
  Vec<F> coeffs(params.cols(), f.zero());
  for (const auto& v : sol.vectors()) {
    const auto c = f.random(rng);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = f.add(coeffs[i], f.mul(c, v[i]));
  }
  Vec<F> flat(total, f.zero());
  for (std::size_t r = 0; r < total; ++r) {
    for (std::size_t c = 0; c < params.cols(); ++c) flat[r] = f.add(flat[r], f.mul(params(r, c), coeffs[c]));
  }
  return unflatten(f, a.n(), a.k(), flat);
}

/// Shapes of 3x3 commuting pairs, one per branch of the closure certificate.
enum class Irr3Case { one_regular, split_spectrum, rank_one_nilpotent, zero_constant };

inline const char* irr3_case_name(Irr3Case c) {
  switch (c) {
    case Irr3Case::one_regular: return "one_regular";
    case Irr3Case::split_spectrum: return "split_spectrum";
    case Irr3Case::rank_one_nilpotent: return "rank_one_nilpotent";
    case Irr3Case::zero_constant: return "zero_constant";
  }
  return "?";
}

/// A random commuting 3x3 pair of the requested shape, conjugated by a random
/// invertible matrix and shifted by random scalars where the shape allows.
///   one_regular:        A_0 1-regular.
///   split_spectrum:     A_0 ~ diag(u, u, v), B_0 in F[A_0] (not 1-regular).
///   rank_one_nilpotent: A_0 ~ u I + e_{12}, B_0 ~ v I + w e_{12}.
///   zero_constant:      A_0 = B_0 = 0 (one or both of A, B may vanish).
template <ExactField F>
std::pair<MatPoly<F>, MatPoly<F>> random_irr3_pair(const F& field, std::size_t k, Irr3Case kind, Rng& rng) {
  const std::size_t n = 3;
  if (kind == Irr3Case::one_regular) return random_u_pair(field, n, k, rng);

  const auto id = Matrix<F>::identity(field, n);
  const auto e12 = Matrix<F>::unit(field, n, 0, 1);
  MatPoly<F> a(field, n, k);
  MatPoly<F> b(field, n, k);
  switch (kind) {
    case Irr3Case::split_spectrum: {
      const auto u = field.random(rng);
      auto v = field.random(rng);
      while (v == u) v = field.random(rng);
      auto a0 = id.scaled(u);
      a0(2, 2) = v;
      a = random_with_constant(a0, k, rng);
      b = random_commuting_with_constant_in(a, {id, a0}, rng);
      break;
    }
    case Irr3Case::rank_one_nilpotent: {
      a = random_with_constant(e12, k, rng);
      b = random_commuting_with_constant_in(a, {id, e12}, rng);
      a += MatPoly<F>::constant(id.scaled(field.random(rng)), k);
      break;
    }
    case Irr3Case::zero_constant: {
      const auto variant = rng.below(4);
      if (variant != 3) {
        a = random_with_constant(Matrix<F>(field, n, n), k, rng);
        if (variant == 1 && k >= 2) a.coeff(1) = Matrix<F>(field, n, n);
        b = random_commuting_with_constant_in(a, {}, rng);
        if (variant == 2) std::swap(a, b);
      }
      break;
    }
    case Irr3Case::one_regular:
      break;
  }
  auto [h, h_inv] = random_invertible(field, n, rng);
  return {a.conjugated(h, h_inv), b.conjugated(h, h_inv)};
}

/// Random polynomials q_0..q_k of degree < n.
template <ExactField F>
std::vector<UniPoly<F>> random_qs(const F& field, std::size_t n, std::size_t k, Rng& rng) {
  std::vector<UniPoly<F>> qs;
  qs.reserve(k + 1);
  for (std::size_t j = 0; j <= k; ++j) qs.push_back(UniPoly<F>::random(field, n > 0 ? n - 1 : 0, rng));
  return qs;
}

/// A random commuting pair (A, B) with A_0 1-regular, B parametrized by random q's.
template <ExactField F>
std::pair<MatPoly<F>, MatPoly<F>> random_u_pair(const F& field, std::size_t n, std::size_t k, Rng& rng) {
  auto a = random_with_constant(random_one_regular(field, n, rng), k, rng);
  auto b = b_from_q(random_qs(field, n, k, rng), a);
  return {std::move(a), std::move(b)};
}

}  // namespace jetcomm
