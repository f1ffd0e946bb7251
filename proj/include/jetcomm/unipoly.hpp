#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetcomm/field.hpp"
#include "jetcomm/matrix.hpp"

namespace jetcomm {

/// Univariate polynomial, coefficients lowest degree first. The zero
/// polynomial has an empty coefficient list; otherwise the last coefficient
/// is nonzero.
template <ExactField F>
class UniPoly {
 public:
  using value_type = typename F::value_type;

  explicit UniPoly(F field) : field_(std::move(field)) {}
  UniPoly(F field, std::vector<value_type> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    normalize();
  }

  static UniPoly from_ints(const F& field, std::initializer_list<std::int64_t> lowest_first) {
    std::vector<value_type> c;
    for (auto v : lowest_first) c.push_back(field.from_int(v));
    return UniPoly(field, std::move(c));
  }
  static UniPoly constant(const F& field, value_type c) { return UniPoly(field, {std::move(c)}); }
  static UniPoly x(const F& field) { return UniPoly(field, {field.zero(), field.one()}); }
  /// x - r
  static UniPoly linear_root(const F& field, const value_type& r) { return UniPoly(field, {field.neg(r), field.one()}); }

  static UniPoly random(const F& field, std::size_t max_degree, Rng& rng) {
    std::vector<value_type> c(max_degree + 1);
    for (auto& v : c) v = field.random(rng);
    return UniPoly(field, std::move(c));
  }
  static UniPoly random_monic(const F& field, std::size_t degree, Rng& rng) {
    std::vector<value_type> c(degree + 1);
    for (auto& v : c) v = field.random(rng);
    c.back() = field.one();
    return UniPoly(field, std::move(c));
  }

  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] const std::vector<value_type>& coeffs() const { return coeffs_; }
  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  [[nodiscard]] value_type coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_.zero(); }
  [[nodiscard]] value_type leading() const { return coeffs_.empty() ? field_.zero() : coeffs_.back(); }

  [[nodiscard]] UniPoly monic() const {
    if (is_zero()) return *this;
    auto li = field_.inv(leading());
    std::vector<value_type> c = coeffs_;
    for (auto& v : c) v = field_.mul(v, li);
    return UniPoly(field_, std::move(c));
  }

  [[nodiscard]] UniPoly derivative() const {
    std::vector<value_type> c;
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      c.push_back(field_.mul(field_.from_int(static_cast<std::int64_t>(i)), coeffs_[i]));
    return UniPoly(field_, std::move(c));
  }

  [[nodiscard]] value_type operator()(const value_type& x) const {
    auto acc = field_.zero();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
  }

  /// Horner evaluation at a square matrix.
  [[nodiscard]] Matrix<F> operator()(const Matrix<F>& m) const {
    Matrix<F> acc(field_, m.rows(), m.cols());
    const auto id = Matrix<F>::identity(field_, m.rows());
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * m + id.scaled(*it);
    return acc;
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    const F& f = a.field_;
    std::vector<value_type> c(std::max(a.coeffs_.size(), b.coeffs_.size()), f.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(i), b.coeff(i));
    return UniPoly(f, std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    const F& f = a.field_;
    std::vector<value_type> c(std::max(a.coeffs_.size(), b.coeffs_.size()), f.zero());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(i), b.coeff(i));
    return UniPoly(f, std::move(c));
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    const F& f = a.field_;
    if (a.is_zero() || b.is_zero()) return UniPoly(f);
    std::vector<value_type> c(a.coeffs_.size() + b.coeffs_.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
    return UniPoly(f, std::move(c));
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.coeffs_ == b.coeffs_; }

  [[nodiscard]] UniPoly scaled(const value_type& s) const {
    std::vector<value_type> c = coeffs_;
    for (auto& v : c) v = field_.mul(s, v);
    return UniPoly(field_, std::move(c));
  }

  /// Euclidean division; throws on a zero divisor.
  [[nodiscard]] std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    const F& f = field_;
    std::vector<value_type> r = coeffs_;
    if (degree() < d.degree()) return {UniPoly(f), *this};
    std::vector<value_type> q(coeffs_.size() - d.coeffs_.size() + 1, f.zero());
    const auto lead_inv = f.inv(d.leading());
    for (std::size_t k = q.size(); k-- > 0;) {
      auto c = f.mul(r[k + d.coeffs_.size() - 1], lead_inv);
      q[k] = c;
      if (f.is_zero(c)) continue;
      for (std::size_t j = 0; j < d.coeffs_.size(); ++j) r[k + j] = f.sub(r[k + j], f.mul(c, d.coeffs_[j]));
    }
    return {UniPoly(f, std::move(q)), UniPoly(f, std::move(r))};
  }
  [[nodiscard]] UniPoly mod(const UniPoly& d) const { return divmod(d).second; }

  [[nodiscard]] std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      if (field_.is_zero(coeffs_[i])) continue;
      std::string c = field_.to_signed_string(coeffs_[i]);
      bool neg = !c.empty() && c.front() == '-';
      if (neg) c.erase(0, 1);
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      if (i == 0 || c != "1") out += c;
      if (i > 0) {
        if (c != "1") out += "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && field_.is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  F field_;
  std::vector<value_type> coeffs_;
};

/// Monic gcd (zero if both inputs are zero).
template <ExactField F>
UniPoly<F> gcd(UniPoly<F> a, UniPoly<F> b) {
  while (!b.is_zero()) {
    auto r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// base^e mod m by repeated squaring.
template <ExactField F>
UniPoly<F> powmod(UniPoly<F> base, BigInt e, const UniPoly<F>& m) {
  UniPoly<F> r = UniPoly<F>::constant(base.field(), base.field().one()).mod(m);
  base = base.mod(m);
  while (e != 0) {
    if ((e & 1) != 0) r = (r * base).mod(m);
    base = (base * base).mod(m);
    e >>= 1;
  }
  return r;
}

template <ExactField F>
Matrix<F> companion_matrix(const UniPoly<F>& monic) {
  const F& f = monic.field();
  if (monic.degree() < 1 || monic.leading() != f.one()) throw std::invalid_argument("companion matrix needs a monic polynomial of degree >= 1");
  auto n = static_cast<std::size_t>(monic.degree());
  Matrix<F> c(f, n, n);
  for (std::size_t i = 1; i < n; ++i) c(i, i - 1) = f.one();
  for (std::size_t i = 0; i < n; ++i) c(i, n - 1) = f.neg(monic.coeff(i));
  return c;
}

}  // namespace jetcomm
