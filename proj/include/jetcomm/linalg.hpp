#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "jetcomm/field.hpp"
#include "jetcomm/matrix.hpp"
#include "jetcomm/unipoly.hpp"

namespace jetcomm {

template <ExactField F>
using Vec = std::vector<typename F::value_type>;

template <ExactField F>
struct Echelon {
  Matrix<F> reduced;               // reduced row echelon form, zero rows last
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
  [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

/// Gauss-Jordan elimination. The pivot in each column is the first row (from
/// the top of the unreduced part) with a nonzero entry; no magnitude pivoting.
template <ExactField F>
Echelon<F> rref(Matrix<F> m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && f.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    const auto inv = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || f.is_zero(m(i, c))) continue;
      const auto factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(pivots)};
}

template <ExactField F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).rank();
}

/// How the coordinates of a subspace's ambient space are to be read.
struct Coordinates {
  enum class Kind { plain, matrix, matpoly };
  Kind kind = Kind::plain;
  std::size_t n = 0;  // matrix size for matrix / matpoly spaces
  std::size_t k = 0;  // truncation order for matpoly spaces

  static Coordinates plain() { return {}; }
  static Coordinates matrix(std::size_t n) { return {Kind::matrix, n, 0}; }
  static Coordinates matpoly(std::size_t n, std::size_t k) { return {Kind::matpoly, n, k}; }
  bool operator==(const Coordinates&) const = default;
};

/// A linear subspace stored as the nonzero rows of its reduced row echelon
/// basis, which is unique: two subspaces are equal iff their bases are.
template <ExactField F>
class SubspaceBasis {
 public:
  using value_type = typename F::value_type;

  SubspaceBasis(F field, std::size_t ambient_dim, Coordinates ctx = {})
      : field_(std::move(field)), ambient_(ambient_dim), ctx_(ctx) {}

  /// Span of the given vectors (each of length ambient_dim).
  static SubspaceBasis span(const F& field, std::size_t ambient_dim, const std::vector<Vec<F>>& vectors,
                            Coordinates ctx = {}) {
    SubspaceBasis s(field, ambient_dim, ctx);
    if (vectors.empty()) return s;
    Matrix<F> m(field, vectors.size(), ambient_dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient_dim) throw std::invalid_argument("vector length does not match ambient dimension");
      for (std::size_t j = 0; j < ambient_dim; ++j) m(i, j) = vectors[i][j];
    }
    auto e = rref(std::move(m));
    for (std::size_t i = 0; i < e.rank(); ++i) {
      auto row = e.reduced.row(i);
      s.vectors_.emplace_back(row.begin(), row.end());
    }
    s.pivots_ = std::move(e.pivots);
    return s;
  }

  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] std::size_t ambient_dim() const { return ambient_; }
  [[nodiscard]] std::size_t dim() const { return vectors_.size(); }
  [[nodiscard]] const std::vector<Vec<F>>& vectors() const { return vectors_; }
  [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }
  [[nodiscard]] const Coordinates& context() const { return ctx_; }

  /// Residual of v after elimination against the basis; zero iff v is in the span.
  [[nodiscard]] Vec<F> reduce(Vec<F> v) const {
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j) v[j] = field_.sub(v[j], field_.mul(c, vectors_[i][j]));
    }
    return v;
  }

  [[nodiscard]] bool contains(const Vec<F>& v) const {
    for (const auto& x : reduce(v)) {
      if (!field_.is_zero(x)) return false;
    }
    return true;
  }

  [[nodiscard]] bool contains(const SubspaceBasis& other) const {
    for (const auto& v : other.vectors_) {
      if (!contains(v)) return false;
    }
    return true;
  }

  friend bool operator==(const SubspaceBasis& a, const SubspaceBasis& b) {
    return a.ambient_ == b.ambient_ && a.vectors_ == b.vectors_;
  }

 private:
  F field_;
  std::size_t ambient_;
  Coordinates ctx_;
  std::vector<Vec<F>> vectors_;
  std::vector<std::size_t> pivots_;
};

/// Growing span used by closure computations. Stored rows are reduced against
/// every earlier row, so elimination in insertion order is exact.
template <ExactField F>
class IncrementalSpan {
 public:
  IncrementalSpan(F field, std::size_t ambient_dim) : field_(std::move(field)), ambient_(ambient_dim) {}

  /// Adds v if it is independent of the current span; returns whether it was.
  bool insert(Vec<F> v) {
    v = reduce(std::move(v));
    std::size_t p = 0;
    while (p < ambient_ && field_.is_zero(v[p])) ++p;
    if (p == ambient_) return false;
    const auto inv = field_.inv(v[p]);
    for (auto& x : v) x = field_.mul(x, inv);
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

  [[nodiscard]] Vec<F> reduce(Vec<F> v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto c = v[pivots_[i]];
      if (field_.is_zero(c)) continue;
      for (std::size_t j = 0; j < ambient_; ++j) v[j] = field_.sub(v[j], field_.mul(c, rows_[i][j]));
    }
    return v;
  }

  [[nodiscard]] std::size_t dim() const { return rows_.size(); }
  [[nodiscard]] const std::vector<Vec<F>>& rows() const { return rows_; }

 private:
  F field_;
  std::size_t ambient_;
  std::vector<Vec<F>> rows_;
  std::vector<std::size_t> pivots_;
};

/// Row-reduced basis of {v : Mv = 0}.
template <ExactField F>
SubspaceBasis<F> kernel_basis(const Matrix<F>& m, Coordinates ctx = {}) {
  const F& f = m.field();
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vec<F>> vs;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(m.cols(), f.zero());
    v[free] = f.one();
    for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = f.neg(e.reduced(i, free));
    vs.push_back(std::move(v));
  }
  return SubspaceBasis<F>::span(f, m.cols(), vs, ctx);
}

/// Particular solution of Mx = b with every free variable set to zero, or
/// nullopt when the system is inconsistent.
template <ExactField F>
std::optional<Vec<F>> solve(const Matrix<F>& m, const Vec<F>& b) {
  const F& f = m.field();
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Matrix<F> aug(f, m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vec<F> x(m.cols(), f.zero());
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.reduced(i, m.cols());
  return x;
}

template <ExactField F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  if (!m.is_square()) throw std::invalid_argument("inverse needs a square matrix");
  const std::size_t n = m.rows();
  Matrix<F> aug(m.field(), n, 2 * n);
  aug.set_block(0, 0, m);
  aug.set_block(0, n, Matrix<F>::identity(m.field(), n));
  auto e = rref(std::move(aug));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

/// Characteristic polynomial det(xI - M) by the division-free
/// Samuelson-Berkowitz recurrence; valid in every characteristic.
template <ExactField F>
UniPoly<F> charpoly(const Matrix<F>& m) {
  if (!m.is_square()) throw std::invalid_argument("charpoly needs a square matrix");
  const F& f = m.field();
  const std::size_t n = m.rows();
  if (n == 0) return UniPoly<F>::constant(f, f.one());
  // Coefficients highest degree first while iterating.
  Vec<F> p{f.one(), f.neg(m(n - 1, n - 1))};
  for (std::size_t i = n - 1; i-- > 0;) {
    const std::size_t sz = n - 1 - i;  // size of the trailing block
    Vec<F> col(sz + 2, f.zero());
    col[0] = f.one();
    col[1] = f.neg(m(i, i));
    // w = C, then repeatedly w = A1 * w; col[j+2] = -R w
    Vec<F> w(sz);
    for (std::size_t r = 0; r < sz; ++r) w[r] = m(i + 1 + r, i);
    for (std::size_t j = 0; j < sz; ++j) {
      auto dot = f.zero();
      for (std::size_t r = 0; r < sz; ++r) dot = f.add(dot, f.mul(m(i, i + 1 + r), w[r]));
      col[j + 2] = f.neg(dot);
      Vec<F> next(sz, f.zero());
      for (std::size_t r = 0; r < sz; ++r)
        for (std::size_t c = 0; c < sz; ++c) next[r] = f.add(next[r], f.mul(m(i + 1 + r, i + 1 + c), w[c]));
      w = std::move(next);
    }
    Vec<F> q(sz + 2, f.zero());
    for (std::size_t r = 0; r < sz + 2; ++r)
      for (std::size_t c = 0; c <= std::min(r, sz); ++c) q[r] = f.add(q[r], f.mul(col[r - c], p[c]));
    p = std::move(q);
  }
  return UniPoly<F>(f, Vec<F>(p.rbegin(), p.rend()));
}

template <ExactField F>
typename F::value_type determinant(const Matrix<F>& m) {
  auto cp = charpoly(m);
  auto c0 = cp.coeff(0);
  return m.rows() % 2 == 0 ? c0 : m.field().neg(c0);
}

template <ExactField F>
Vec<F> flatten(const Matrix<F>& m) {
  return m.data();
}

/// Minimal polynomial and its degree, which equals dim_F F[M].
template <ExactField F>
std::pair<UniPoly<F>, std::size_t> minpoly_dim(const Matrix<F>& m) {
  if (!m.is_square()) throw std::invalid_argument("minpoly needs a square matrix");
  const F& f = m.field();
  const std::size_t n = m.rows();
  std::vector<Matrix<F>> powers{Matrix<F>::identity(f, n)};
  for (std::size_t d = 1; d <= n; ++d) {
    powers.push_back(powers.back() * m);
    Matrix<F> sys(f, n * n, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t e = 0; e < n * n; ++e) sys(e, j) = powers[j].data()[e];
    if (auto c = solve(sys, powers[d].data())) {
      Vec<F> coeffs(d + 1, f.zero());
      for (std::size_t j = 0; j < d; ++j) coeffs[j] = f.neg((*c)[j]);
      coeffs[d] = f.one();
      return {UniPoly<F>(f, std::move(coeffs)), d};
    }
  }
  throw std::logic_error("minimal polynomial degree exceeded matrix size");
}

namespace detail {

inline std::vector<BigInt> positive_divisors(BigInt v) {
  if (v < 0) v = -v;
  if (v == 0) throw std::invalid_argument("divisors of zero requested");
  if (v > BigInt(1000000000000LL)) throw std::domain_error("coefficient too large for rational root search");
  std::vector<BigInt> small;
  std::vector<BigInt> large;
  for (BigInt d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      small.push_back(d);
      if (d * d != v) large.push_back(v / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

/// Distinct rational roots via the rational root theorem.
inline std::vector<Rational> rational_roots(const UniPoly<RationalField>& p) {
  std::vector<Rational> roots;
  if (p.degree() < 1) return roots;
  // clear denominators
  BigInt l = 1;
  for (const auto& c : p.coeffs()) {
    BigInt d = boost::multiprecision::denominator(c);
    l = l / boost::multiprecision::gcd(l, d) * d;
  }
  std::vector<BigInt> ic;
  for (const auto& c : p.coeffs()) ic.push_back(boost::multiprecision::numerator(c) * (l / boost::multiprecision::denominator(c)));
  std::size_t shift = 0;
  while (ic[shift] == 0) ++shift;
  if (shift > 0) roots.emplace_back(0);
  if (ic.size() - shift < 2) return roots;
  auto num_divs = positive_divisors(ic[shift]);
  auto den_divs = positive_divisors(ic.back());
  std::set<Rational> found;
  for (const auto& a : num_divs) {
    for (const auto& b : den_divs) {
      for (int sign : {1, -1}) {
        Rational r(BigInt(sign) * a, b);
        if (found.count(r) != 0) continue;
        if (p(r) == 0) found.insert(r);
      }
    }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

}  // namespace detail

/// Number of distinct roots of p lying in the base field.
template <ExactField F>
std::size_t distinct_base_root_count(const UniPoly<F>& p) {
  if (p.is_zero()) throw std::invalid_argument("root count of the zero polynomial");
  if (p.degree() < 1) return 0;
  if constexpr (std::is_same_v<F, PrimeField>) {
    // deg gcd(p, x^q - x) counts the distinct roots in F_q
    const F& f = p.field();
    auto xq = powmod(UniPoly<F>::x(f), BigInt(f.modulus()), p.monic());
    return static_cast<std::size_t>(gcd(p, xq - UniPoly<F>::x(f)).degree());
  } else {
    return detail::rational_roots(p).size();
  }
}

struct SplitInfo {
  bool is_squarefree = false;
  std::size_t distinct_base_roots = 0;
  bool operator==(const SplitInfo&) const = default;
};

/// Squarefreeness via gcd(p, p') and the count of distinct base-field roots.
template <ExactField F>
SplitInfo squarefree_split_info(const UniPoly<F>& p) {
  if (p.is_zero()) throw std::invalid_argument("squarefree test of the zero polynomial");
  SplitInfo info;
  info.is_squarefree = gcd(p, p.derivative()).degree() == 0;
  info.distinct_base_roots = distinct_base_root_count(p);
  return info;
}

}  // namespace jetcomm
