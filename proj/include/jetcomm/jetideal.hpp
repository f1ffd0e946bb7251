#pragma once

// Generators f_u^(s) of the order-k jet ideal of the commuting-pairs scheme,
// as explicit polynomials in the 2n^2(k+1) variables x_s_i_j, y_s_i_j.

#include <algorithm>
#include <cstddef>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "jetcomm/commutant.hpp"
#include "jetcomm/errors.hpp"
#include "jetcomm/linalg.hpp"
#include "jetcomm/truncmat.hpp"

namespace jetcomm {

/// One jet variable. row and col are 0-based; names print them 1-based.
struct JetVar {
  enum class Series { x = 0, y = 1 };
  Series series = Series::x;
  std::size_t order = 0;
  std::size_t row = 0;
  std::size_t col = 0;

  [[nodiscard]] auto key() const { return std::make_tuple(static_cast<int>(series), order, row, col); }
  friend bool operator==(const JetVar& a, const JetVar& b) { return a.key() == b.key(); }
  friend bool operator<(const JetVar& a, const JetVar& b) { return a.key() < b.key(); }

  [[nodiscard]] std::string name() const {
    return std::string(series == Series::x ? "x" : "y") + "_" + std::to_string(order) + "_" +
           std::to_string(row + 1) + "_" + std::to_string(col + 1);
  }

  static JetVar parse(std::string_view s) {
    if (s.size() < 7 || (s[0] != 'x' && s[0] != 'y') || s[1] != '_') {
      throw std::invalid_argument("bad jet variable name: " + std::string(s));
    }
    JetVar v;
    v.series = s[0] == 'x' ? Series::x : Series::y;
    std::size_t parts[3] = {0, 0, 0};
    std::size_t idx = 0;
    bool seen_digit = false;
    for (std::size_t i = 2; i < s.size(); ++i) {
      if (s[i] == '_') {
        if (!seen_digit || ++idx > 2) throw std::invalid_argument("bad jet variable name: " + std::string(s));
        seen_digit = false;
      } else if (s[i] >= '0' && s[i] <= '9') {
        parts[idx] = parts[idx] * 10 + static_cast<std::size_t>(s[i] - '0');
        seen_digit = true;
      } else {
        throw std::invalid_argument("bad jet variable name: " + std::string(s));
      }
    }
    if (idx != 2 || !seen_digit || parts[1] == 0 || parts[2] == 0) {
      throw std::invalid_argument("bad jet variable name: " + std::string(s));
    }
    v.order = parts[0];
    v.row = parts[1] - 1;
    v.col = parts[2] - 1;
    return v;
  }
};

/// Monomial as a sorted list of variables (repeats allowed).
using JetMonomial = std::vector<JetVar>;

/// Graded lexicographic comparison: higher degree first, then the
/// lexicographically smaller variable list first.
inline bool monomial_before(const JetMonomial& a, const JetMonomial& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <ExactField F>
class JetPoly {
 public:
  using value_type = typename F::value_type;
  struct Term {
    value_type coeff;
    JetMonomial mono;
    friend bool operator==(const Term& a, const Term& b) { return a.coeff == b.coeff && a.mono == b.mono; }
  };

  explicit JetPoly(F field) : field_(std::move(field)) {}

  [[nodiscard]] const F& field() const { return field_; }
  [[nodiscard]] const std::vector<Term>& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }

  /// Adds c * mono; call normalize() afterwards (or use the operators, which do).
  void add_term(const value_type& c, JetMonomial mono) {
    std::sort(mono.begin(), mono.end());
    terms_.push_back({c, std::move(mono)});
  }

  /// Sorts terms, merges equal monomials, drops zero coefficients.
  void normalize() {
    std::stable_sort(terms_.begin(), terms_.end(),
                     [](const Term& a, const Term& b) { return monomial_before(a.mono, b.mono); });
    std::vector<Term> merged;
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().mono == t.mono) {
        merged.back().coeff = field_.add(merged.back().coeff, t.coeff);
      } else {
        merged.push_back(std::move(t));
      }
    }
    terms_.clear();
    for (auto& t : merged) {
      if (!field_.is_zero(t.coeff)) terms_.push_back(std::move(t));
    }
  }

  JetPoly& operator+=(const JetPoly& o) {
    terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
    normalize();
    return *this;
  }
  friend JetPoly operator+(JetPoly a, const JetPoly& b) { return a += b; }
  friend bool operator==(const JetPoly& a, const JetPoly& b) { return a.terms_ == b.terms_; }

  /// Value at the point x^(s) = A_s, y^(s) = B_s.
  [[nodiscard]] value_type evaluate(const MatPoly<F>& a, const MatPoly<F>& b) const {
    value_type total = field_.zero();
    for (const auto& t : terms_) {
      value_type v = t.coeff;
      for (const auto& var : t.mono) {
        const auto& src = var.series == JetVar::Series::x ? a : b;
        v = field_.mul(v, src.coeff(var.order)(var.row, var.col));
      }
      total = field_.add(total, v);
    }
    return total;
  }

  /// Formal partial derivative with respect to var.
  [[nodiscard]] JetPoly partial_derivative(const JetVar& var) const {
    JetPoly out(field_);
    for (const auto& t : terms_) {
      const auto count = std::count(t.mono.begin(), t.mono.end(), var);
      if (count == 0) continue;
      JetMonomial rest = t.mono;
      rest.erase(std::find(rest.begin(), rest.end(), var));
      out.add_term(field_.mul(t.coeff, field_.from_int(count)), std::move(rest));
    }
    out.normalize();
    return out;
  }

  /// "c*v1*v2 + c*v3*v4 - ..." with symmetric coefficients; "0" for zero.
  [[nodiscard]] std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
      std::string c = field_.to_signed_string(terms_[i].coeff);
      const bool negative = !c.empty() && c[0] == '-';
      if (negative) c.erase(0, 1);
      if (i == 0) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      out += c;
      for (const auto& v : terms_[i].mono) out += "*" + v.name();
    }
    return out;
  }

  static JetPoly parse(const F& field, std::string_view text) {
    JetPoly p(field);
    std::istringstream in{std::string(text)};
    std::string tok;
    bool negative = false;
    bool expect_term = true;
    bool first = true;
    while (in >> tok) {
      if (!expect_term) {
        if (tok != "+" && tok != "-") throw std::invalid_argument("expected + or - in generator: " + std::string(text));
        negative = tok == "-";
        expect_term = true;
        continue;
      }
      if (first && tok == "0") {
        first = false;
        expect_term = false;
        continue;
      }
      first = false;
      if (!tok.empty() && tok[0] == '-') {
        negative = !negative;
        tok.erase(0, 1);
      }
      JetMonomial mono;
      std::size_t star = tok.find('*');
      auto c = field.parse(tok.substr(0, star));
      while (star != std::string::npos) {
        const std::size_t next = tok.find('*', star + 1);
        mono.push_back(JetVar::parse(tok.substr(star + 1, next == std::string::npos ? std::string::npos : next - star - 1)));
        star = next;
      }
      p.add_term(negative ? field.neg(c) : c, std::move(mono));
      negative = false;
      expect_term = false;
    }
    if (expect_term && !first) throw std::invalid_argument("dangling operator in generator: " + std::string(text));
    p.normalize();
    return p;
  }

 private:
  F field_;
  std::vector<Term> terms_;
};

/// Index of the generator for matrix position (i, j) at order s.
inline std::size_t generator_index(std::size_t n, std::size_t s, std::size_t i, std::size_t j) {
  return s * n * n + i * n + j;
}

/// The n^2(k+1) coefficients of t^s in the entries of X(t)Y(t) - Y(t)X(t),
/// ordered by s, then row-major over (i, j).
template <ExactField F>
std::vector<JetPoly<F>> generators(const F& field, std::size_t n, std::size_t k) {
  using S = JetVar::Series;
  std::vector<JetPoly<F>> gens;
  gens.reserve(n * n * (k + 1));
  for (std::size_t s = 0; s <= k; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        JetPoly<F> f(field);
        for (std::size_t a = 0; a <= s; ++a) {
          const std::size_t b = s - a;
          for (std::size_t m = 0; m < n; ++m) {
            f.add_term(field.one(), {JetVar{S::x, a, i, m}, JetVar{S::y, b, m, j}});
            f.add_term(field.neg(field.one()), {JetVar{S::y, a, i, m}, JetVar{S::x, b, m, j}});
          }
        }
        f.normalize();
        gens.push_back(std::move(f));
      }
    }
  }
  return gens;
}

template <ExactField F>
std::vector<typename F::value_type> evaluate(const std::vector<JetPoly<F>>& gens, const MatPoly<F>& a,
                                             const MatPoly<F>& b) {
  a.require_compatible(b);
  std::vector<typename F::value_type> out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(g.evaluate(a, b));
  return out;
}

/// Column index of a jet variable in the Jacobian: all x variables (s-major,
/// row-major) followed by all y variables.
inline std::size_t jet_var_index(std::size_t n, std::size_t k, const JetVar& v) {
  const std::size_t base = v.series == JetVar::Series::x ? 0 : n * n * (k + 1);
  return base + v.order * n * n + v.row * n + v.col;
}

/// Jacobian of the generators at (A, B), assembled from the bilinear structure:
///   d f^(s)_{ij} / d x^(c)_{pq} = [p=i] B_{s-c}(q,j) - [q=j] B_{s-c}(i,p)
///   d f^(s)_{ij} / d y^(c)_{pq} = [q=j] A_{s-c}(i,p) - [p=i] A_{s-c}(q,j)
template <ExactField F>
Matrix<F> jacobian(const MatPoly<F>& a, const MatPoly<F>& b) {
  a.require_compatible(b);
  const F& f = a.field();
  const std::size_t n = a.n();
  const std::size_t k = a.k();
  const std::size_t nx = n * n * (k + 1);
  Matrix<F> jac(f, nx, 2 * nx);
  for (std::size_t s = 0; s <= k; ++s) {
    for (std::size_t c = 0; c <= s; ++c) {
      const auto& as = a.coeff(s - c);
      const auto& bs = b.coeff(s - c);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t row = generator_index(n, s, i, j);
          for (std::size_t m = 0; m < n; ++m) {
            // p = i, q = m and p = m, q = j
            auto& dx1 = jac(row, c * n * n + i * n + m);
            dx1 = f.add(dx1, bs(m, j));
            auto& dx2 = jac(row, c * n * n + m * n + j);
            dx2 = f.sub(dx2, bs(i, m));
            auto& dy1 = jac(row, nx + c * n * n + m * n + j);
            dy1 = f.add(dy1, as(i, m));
            auto& dy2 = jac(row, nx + c * n * n + i * n + m);
            dy2 = f.sub(dy2, as(m, j));
          }
        }
      }
    }
  }
  return jac;
}

/// Dimension of the Zariski tangent space of the jet scheme at (A, B).
template <ExactField F>
std::size_t jacobian_tangent_dim(const MatPoly<F>& a, const MatPoly<F>& b) {
  a.require_compatible(b);
  if (!commutator(a, b).is_zero()) throw PreconditionError("jacobian_tangent_dim: point is not on the scheme");
  const std::size_t nvars = 2 * a.n() * a.n() * (a.k() + 1);
  return nvars - rank(jacobian(a, b));
}

enum class ExportFormat { generic, m2, singular };

inline ExportFormat parse_export_format(std::string_view s) {
  if (s == "generic" || s == "text") return ExportFormat::generic;
  if (s == "m2" || s == "macaulay2") return ExportFormat::m2;
  if (s == "singular") return ExportFormat::singular;
  throw std::invalid_argument("unknown export format: " + std::string(s));
}

/// All jet variable names in declaration order.
inline std::vector<std::string> jet_var_names(std::size_t n, std::size_t k) {
  std::vector<std::string> names;
  for (auto series : {JetVar::Series::x, JetVar::Series::y}) {
    for (std::size_t s = 0; s <= k; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) names.push_back(JetVar{series, s, i, j}.name());
      }
    }
  }
  return names;
}

template <ExactField F>
std::string export_ideal(const std::vector<JetPoly<F>>& gens, std::size_t n, std::size_t k, ExportFormat format) {
  if (gens.empty()) throw std::invalid_argument("export_ideal: no generators");
  const F& field = gens.front().field();
  const std::string ch = std::to_string(field.characteristic());
  const std::string header = "jetideal n=" + std::to_string(n) + " k=" + std::to_string(k) + " char=" + ch;
  std::string vars;
  for (const auto& v : jet_var_names(n, k)) vars += (vars.empty() ? "" : ",") + v;

  std::ostringstream out;
  switch (format) {
    case ExportFormat::generic:
      out << header << "\n";
      out << "vars x_s_i_j y_s_i_j s=0.." << k << " i,j=1.." << n << "\n";
      for (const auto& g : gens) out << g.to_string() << "\n";
      break;
    case ExportFormat::m2:
      out << "-- " << header << "\n";
      out << "R = " << (ch == "0" ? std::string("QQ") : "ZZ/" + ch) << "[" << vars << "];\n";
      out << "I = ideal(\n";
      for (std::size_t i = 0; i < gens.size(); ++i) {
        out << "  " << gens[i].to_string() << (i + 1 < gens.size() ? ",\n" : "\n");
      }
      out << ");\n";
      break;
    case ExportFormat::singular:
      out << "// " << header << "\n";
      out << "ring R = " << ch << ",(" << vars << "),dp;\n";
      out << "ideal I =\n";
      for (std::size_t i = 0; i < gens.size(); ++i) {
        out << "  " << gens[i].to_string() << (i + 1 < gens.size() ? ",\n" : ";\n");
      }
      break;
  }
  return out.str();
}

template <ExactField F>
struct ParsedIdeal {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<JetPoly<F>> gens;
};

/// Reads the generic text export back. The characteristic in the header must match field.
template <ExactField F>
ParsedIdeal<F> parse_ideal(const F& field, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty jet ideal file");
  ParsedIdeal<F> out;
  std::string ch;
  {
    std::istringstream h(line);
    std::string word;
    h >> word;
    if (word != "jetideal") throw std::invalid_argument("missing jetideal header");
    while (h >> word) {
      const auto eq = word.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad header field: " + word);
      const auto key = word.substr(0, eq);
      const auto val = word.substr(eq + 1);
      if (key == "n") out.n = std::stoul(val);
      else if (key == "k") out.k = std::stoul(val);
      else if (key == "char") ch = val;
      else throw std::invalid_argument("unknown header field: " + key);
    }
  }
  if (ch != std::to_string(field.characteristic())) throw std::invalid_argument("characteristic mismatch: file has " + ch);
  if (!std::getline(in, line) || line.rfind("vars", 0) != 0) throw std::invalid_argument("missing vars line");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.gens.push_back(JetPoly<F>::parse(field, line));
  }
  if (out.gens.size() != out.n * out.n * (out.k + 1)) throw std::invalid_argument("generator count does not match n, k");
  return out;
}

}  // namespace jetcomm
