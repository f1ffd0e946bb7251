#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetcomm/linalg.hpp"
#include "jetcomm/matrix.hpp"
#include "jetcomm/unipoly.hpp"

namespace jetcomm {

/// Truncate a polynomial in t to degree <= k.
template <ExactField F>
UniPoly<F> truncated(const UniPoly<F>& p, std::size_t k) {
  if (p.degree() <= static_cast<long>(k)) return p;
  return UniPoly<F>(p.field(), Vec<F>(p.coeffs().begin(), p.coeffs().begin() + static_cast<long>(k) + 1));
}

template <ExactField F>
UniPoly<F> mul_trunc(const UniPoly<F>& a, const UniPoly<F>& b, std::size_t k) {
  return truncated(a * b, k);
}

/// Inverse of u in F[t]/t^{k+1}; u(0) must be nonzero.
template <ExactField F>
UniPoly<F> series_inverse(const UniPoly<F>& u, std::size_t k) {
  const F& f = u.field();
  if (f.is_zero(u.coeff(0))) throw std::domain_error("series with zero constant term is not invertible");
  const auto c0inv = f.inv(u.coeff(0));
  Vec<F> v(k + 1, f.zero());
  v[0] = c0inv;
  for (std::size_t s = 1; s <= k; ++s) {
    auto acc = f.zero();
    for (std::size_t j = 1; j <= s; ++j) acc = f.add(acc, f.mul(u.coeff(j), v[s - j]));
    v[s] = f.neg(f.mul(acc, c0inv));
  }
  return UniPoly<F>(f, std::move(v));
}

/// Element of M_n(F)[t]/t^{k+1}: coefficient matrices A_0..A_k.
template <ExactField F>
class MatPoly {
 public:
  using value_type = typename F::value_type;

  MatPoly(F field, std::size_t n, std::size_t k) : field_(field), n_(n), coeffs_(k + 1, Matrix<F>(field, n, n)) {}

  MatPoly(F field, std::vector<Matrix<F>> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("a matrix polynomial needs at least the t^0 coefficient");
    n_ = coeffs_.front().rows();
    for (const auto& c : coeffs_) {
      if (c.rows() != n_ || c.cols() != n_) throw std::invalid_argument("coefficient matrices must all be n x n");
    }
  }

  static MatPoly identity(const F& field, std::size_t n, std::size_t k) {
    MatPoly a(field, n, k);
    a.coeffs_[0] = Matrix<F>::identity(field, n);
    return a;
  }

  /// The element t (times the identity).
  static MatPoly t(const F& field, std::size_t n, std::size_t k) {
    MatPoly a(field, n, k);
    if (k >= 1) a.coeffs_[1] = Matrix<F>::identity(field, n);
    return a;
  }

  static MatPoly constant(const Matrix<F>& m, std::size_t k) {
    MatPoly a(m.field(), m.rows(), k);
    a.coeffs_[0] = m;
    return a;
  }

  /// p(t) * I, truncated past t^k.
  static MatPoly scalar(const UniPoly<F>& p, std::size_t n, std::size_t k) {
    MatPoly a(p.field(), n, k);
    for (std::size_t s = 0; s <= k; ++s) a.coeffs_[s] = Matrix<F>::identity(p.field(), n).scaled(p.coeff(s));
    return a;
  }

  static MatPoly random(const F& field, std::size_t n, std::size_t k, Rng& rng) {
    MatPoly a(field, n, k);
    for (auto& c : a.coeffs_) c = Matrix<F>::random(field, n, n, rng);
    return a;
  }

  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] std::size_t n() const { return n_; }
  [[nodiscard]] std::size_t k() const { return coeffs_.size() - 1; }
  [[nodiscard]] const Matrix<F>& coeff(std::size_t s) const { return coeffs_.at(s); }
  Matrix<F>& coeff(std::size_t s) { return coeffs_.at(s); }
  [[nodiscard]] const std::vector<Matrix<F>>& coeffs() const { return coeffs_; }

  [[nodiscard]] bool is_zero() const {
    for (const auto& c : coeffs_) {
      if (!c.is_zero()) return false;
    }
    return true;
  }

  /// Entry (i, j) read as a polynomial in t.
  [[nodiscard]] UniPoly<F> entry(std::size_t i, std::size_t j) const {
    Vec<F> c;
    for (const auto& m : coeffs_) c.push_back(m(i, j));
    return UniPoly<F>(field_, std::move(c));
  }

  void set_entry(std::size_t i, std::size_t j, const UniPoly<F>& p) {
    for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s](i, j) = p.coeff(s);
  }

  /// Least s with A_s != 0; nullopt stands for infinity (A = 0).
  [[nodiscard]] std::optional<std::size_t> valuation() const {
    for (std::size_t s = 0; s < coeffs_.size(); ++s) {
      if (!coeffs_[s].is_zero()) return s;
    }
    return std::nullopt;
  }

  /// Image under F[t]/t^{k+1} -> F[t]/t^{order+1}.
  [[nodiscard]] MatPoly truncate(std::size_t order) const {
    if (order > k()) throw std::invalid_argument("truncation order exceeds source order");
    return MatPoly(field_, std::vector<Matrix<F>>(coeffs_.begin(), coeffs_.begin() + static_cast<long>(order) + 1));
  }

  /// Same coefficients viewed at a higher order (zero-padded).
  [[nodiscard]] MatPoly extend(std::size_t order) const {
    if (order < k()) throw std::invalid_argument("extension order is below source order");
    MatPoly r(field_, n_, order);
    for (std::size_t s = 0; s <= k(); ++s) r.coeffs_[s] = coeffs_[s];
    return r;
  }

  /// t^m * A.
  [[nodiscard]] MatPoly shifted_up(std::size_t m) const {
    MatPoly r(field_, n_, k());
    for (std::size_t s = 0; s + m <= k(); ++s) r.coeffs_[s + m] = coeffs_[s];
    return r;
  }

  /// A_r + A_{r+1} t + ... + A_k t^{k-r}, same order k.
  [[nodiscard]] MatPoly shifted_down(std::size_t r) const {
    MatPoly out(field_, n_, k());
    for (std::size_t s = r; s <= k(); ++s) out.coeffs_[s - r] = coeffs_[s];
    return out;
  }

  /// p(t) * A, truncated.
  [[nodiscard]] MatPoly times_series(const UniPoly<F>& p) const {
    MatPoly r(field_, n_, k());
    for (std::size_t s = 0; s <= k(); ++s)
      for (std::size_t i = 0; i <= s; ++i) {
        auto c = p.coeff(i);
        if (!field_.is_zero(c)) r.coeffs_[s] += coeffs_[s - i].scaled(c);
      }
    return r;
  }

  [[nodiscard]] MatPoly scaled(const value_type& c) const {
    MatPoly r = *this;
    for (auto& m : r.coeffs_) m = m.scaled(c);
    return r;
  }

  /// Simultaneous conjugation H A_s H^{-1}.
  [[nodiscard]] MatPoly conjugated(const Matrix<F>& h, const Matrix<F>& h_inv) const {
    MatPoly r = *this;
    for (auto& m : r.coeffs_) m = h * m * h_inv;
    return r;
  }

  MatPoly& operator+=(const MatPoly& o) {
    require_compatible(o);
    for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] += o.coeffs_[s];
    return *this;
  }
  MatPoly& operator-=(const MatPoly& o) {
    require_compatible(o);
    for (std::size_t s = 0; s < coeffs_.size(); ++s) coeffs_[s] -= o.coeffs_[s];
    return *this;
  }
  friend MatPoly operator+(MatPoly a, const MatPoly& b) { return a += b; }
  friend MatPoly operator-(MatPoly a, const MatPoly& b) { return a -= b; }
  friend MatPoly operator-(const MatPoly& a) { return MatPoly(a.field_, a.n_, a.k()) - a; }

  /// Ring product; coefficient s is sum_{i+j=s} A_i B_j.
  friend MatPoly operator*(const MatPoly& a, const MatPoly& b) {
    a.require_compatible(b);
    MatPoly c(a.field_, a.n_, a.k());
    for (std::size_t i = 0; i <= a.k(); ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j <= a.k(); ++j) c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return c;
  }

  friend bool operator==(const MatPoly& a, const MatPoly& b) { return a.coeffs_ == b.coeffs_; }

  void require_compatible(const MatPoly& o) const {
    if (n_ != o.n_ || k() != o.k()) {
      throw std::invalid_argument("matrix polynomial shape mismatch: (n=" + std::to_string(n_) + ", k=" +
                                  std::to_string(k()) + ") vs (n=" + std::to_string(o.n_) +
                                  ", k=" + std::to_string(o.k()) + ")");
    }
  }

 private:
  F field_;
  std::size_t n_ = 0;
  std::vector<Matrix<F>> coeffs_;
};

template <ExactField F>
MatPoly<F> commutator(const MatPoly<F>& a, const MatPoly<F>& b) {
  return a * b - b * a;
}

template <ExactField F>
MatPoly<F> power(const MatPoly<F>& a, std::size_t e) {
  MatPoly<F> r = MatPoly<F>::identity(a.field(), a.n(), a.k());
  for (std::size_t i = 0; i < e; ++i) r = r * a;
  return r;
}

/// q(A) in the truncated ring, by Horner's rule.
template <ExactField F>
MatPoly<F> evaluate_poly(const UniPoly<F>& q, const MatPoly<F>& a) {
  const F& f = a.field();
  MatPoly<F> acc(f, a.n(), a.k());
  const auto id = MatPoly<F>::identity(f, a.n(), a.k());
  for (long d = q.degree(); d >= 0; --d) acc = acc * a + id.scaled(q.coeff(static_cast<std::size_t>(d)));
  return acc;
}

/// The n(k+1) x n(k+1) block upper-triangular Toeplitz matrix with A_{j-i}
/// in block (i, j).
template <ExactField F>
Matrix<F> embed_toeplitz(const MatPoly<F>& a) {
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  Matrix<F> m(a.field(), n * (k + 1), n * (k + 1));
  for (std::size_t bi = 0; bi <= k; ++bi)
    for (std::size_t bj = bi; bj <= k; ++bj) m.set_block(bi * n, bj * n, a.coeff(bj - bi));
  return m;
}

/// Coordinates of length n^2(k+1), s-major then row-major. Every kernel
/// computation on matrix polynomials uses this layout.
template <ExactField F>
Vec<F> flatten(const MatPoly<F>& a) {
  Vec<F> v;
  v.reserve(a.n() * a.n() * (a.k() + 1));
  for (const auto& c : a.coeffs()) v.insert(v.end(), c.data().begin(), c.data().end());
  return v;
}

template <ExactField F>
MatPoly<F> unflatten(const F& field, std::size_t n, std::size_t k, const Vec<F>& v) {
  if (v.size() != n * n * (k + 1)) throw std::invalid_argument("coordinate vector has the wrong length");
  MatPoly<F> a(field, n, k);
  for (std::size_t s = 0; s <= k; ++s)
    a.coeff(s) = Matrix<F>(field, n, n, Vec<F>(v.begin() + static_cast<long>(s * n * n),
                                               v.begin() + static_cast<long>((s + 1) * n * n)));
  return a;
}

/// The affine moves on commuting pairs.
enum class CombineMode {
  shift_a,  // (A + p(t) I, B)
  shift_b,  // (A, B + p(t) I)
  shear_b,  // (A, B + p(t) A)
  scale_a,  // (A (1 + q(t)), B), q(0) = 0
};

template <ExactField F>
std::pair<MatPoly<F>, MatPoly<F>> poly_combine(const MatPoly<F>& a, const MatPoly<F>& b, const UniPoly<F>& p,
                                               const UniPoly<F>& q, CombineMode mode) {
  a.require_compatible(b);
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  switch (mode) {
    case CombineMode::shift_a:
      return {a + MatPoly<F>::scalar(p, n, k), b};
    case CombineMode::shift_b:
      return {a, b + MatPoly<F>::scalar(p, n, k)};
    case CombineMode::shear_b:
      return {a, b + a.times_series(p)};
    case CombineMode::scale_a: {
      if (!a.field().is_zero(q.coeff(0))) throw std::invalid_argument("scaling series q must satisfy q(0) = 0");
      auto unit = q + UniPoly<F>::constant(a.field(), a.field().one());
      return {a.times_series(unit), b};
    }
  }
  throw std::logic_error("unknown combine mode");
}

}  // namespace jetcomm
