#pragma once

// Plain-text matrix-polynomial files:
//
//   matpoly <n> <k> <char>
//   <k+1 blocks of n rows with n field elements each>
//
// Blank lines and lines starting with '#' are ignored. A pair file holds two
// such records back to back (A first, then B).

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "jetcomm/field.hpp"
#include "jetcomm/matrix.hpp"
#include "jetcomm/truncmat.hpp"

namespace jetcomm {

/// Malformed input text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Whitespace-separated tokens with comments and blank lines removed.
class TokenStream {
 public:
  explicit TokenStream(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) tokens_.push_back(tok);
    }
  }

  [[nodiscard]] bool done() const { return pos_ >= tokens_.size(); }
  const std::string& next() {
    if (done()) throw ParseError("unexpected end of input");
    return tokens_[pos_++];
  }
  std::size_t next_count() {
    const auto& t = next();
    try {
      std::size_t used = 0;
      const auto v = std::stoul(t, &used);
      if (used != t.size()) throw ParseError("expected a count, got '" + t + "'");
      return v;
    } catch (const std::logic_error&) {
      throw ParseError("expected a count, got '" + t + "'");
    }
  }
  void expect(const std::string& word) {
    const auto& t = next();
    if (t != word) throw ParseError("expected '" + word + "', got '" + t + "'");
  }

 private:
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
};

template <ExactField F>
typename F::value_type parse_scalar(const F& field, const std::string& tok) {
  try {
    return field.parse(tok);
  } catch (const std::exception& e) {
    throw ParseError("bad field element '" + tok + "': " + e.what());
  }
}

template <ExactField F>
MatPoly<F> read_matpoly(const F& field, TokenStream& ts) {
  ts.expect("matpoly");
  const std::size_t n = ts.next_count();
  const std::size_t k = ts.next_count();
  const std::size_t ch = ts.next_count();
  if (ch != field.characteristic()) {
    throw ParseError("file characteristic " + std::to_string(ch) + " does not match field " + field.name());
  }
  if (n == 0) throw ParseError("matrix size must be positive");
  MatPoly<F> a(field, n, k);
  for (std::size_t s = 0; s <= k; ++s) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a.coeff(s)(i, j) = parse_scalar(field, ts.next());
    }
  }
  return a;
}

template <ExactField F>
MatPoly<F> parse_matpoly(const F& field, const std::string& text) {
  std::istringstream in(text);
  TokenStream ts(in);
  auto a = read_matpoly(field, ts);
  if (!ts.done()) throw ParseError("trailing content after matpoly");
  return a;
}

template <ExactField F>
std::pair<MatPoly<F>, MatPoly<F>> parse_pair(const F& field, const std::string& text) {
  std::istringstream in(text);
  TokenStream ts(in);
  auto a = read_matpoly(field, ts);
  auto b = read_matpoly(field, ts);
  if (!ts.done()) throw ParseError("trailing content after pair");
  if (a.n() != b.n() || a.k() != b.k()) throw ParseError("pair members differ in size or order");
  return {std::move(a), std::move(b)};
}

template <ExactField F>
void write_matpoly(std::ostream& os, const MatPoly<F>& a) {
  const F& f = a.field();
  os << "matpoly " << a.n() << " " << a.k() << " " << f.characteristic() << "\n";
  for (std::size_t s = 0; s <= a.k(); ++s) {
    if (s > 0) os << "\n";
    for (std::size_t i = 0; i < a.n(); ++i) {
      for (std::size_t j = 0; j < a.n(); ++j) os << (j ? " " : "") << f.to_string(a.coeff(s)(i, j));
      os << "\n";
    }
  }
}

template <ExactField F>
std::string format_matpoly(const MatPoly<F>& a) {
  std::ostringstream os;
  write_matpoly(os, a);
  return os.str();
}

}  // namespace jetcomm
