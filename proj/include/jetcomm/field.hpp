#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <concepts>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "jetcomm/random.hpp"

namespace jetcomm {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Requirements every coefficient field must satisfy. Values are plain
/// data; all arithmetic goes through the (cheap, copyable) field object.
template <class F>
concept ExactField = std::copyable<F> && requires(const F f, const typename F::value_type& a,
                                                  std::string_view s, Rng& rng) {
  typename F::value_type;
  { f.zero() } -> std::same_as<typename F::value_type>;
  { f.one() } -> std::same_as<typename F::value_type>;
  { f.from_int(std::int64_t{}) } -> std::same_as<typename F::value_type>;
  { f.add(a, a) } -> std::same_as<typename F::value_type>;
  { f.sub(a, a) } -> std::same_as<typename F::value_type>;
  { f.mul(a, a) } -> std::same_as<typename F::value_type>;
  { f.neg(a) } -> std::same_as<typename F::value_type>;
  { f.inv(a) } -> std::same_as<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.characteristic() } -> std::same_as<std::uint64_t>;
  { f.to_string(a) } -> std::same_as<std::string>;
  { f.to_signed_string(a) } -> std::same_as<std::string>;
  { f.parse(s) } -> std::same_as<typename F::value_type>;
  { f.random(rng) } -> std::same_as<typename F::value_type>;
  { f.name() } -> std::same_as<std::string>;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1U) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1U;
  }
  return r;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// The prime field F_p, residues stored canonically in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  static constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 62);

  explicit PrimeField(std::uint64_t p = 32003) : p_(p) {
    if (p >= kMaxModulus) throw std::invalid_argument("prime modulus must be below 2^62");
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  }

  [[nodiscard]] std::uint64_t modulus() const { return p_; }
  [[nodiscard]] std::uint64_t characteristic() const { return p_; }
  [[nodiscard]] std::string name() const { return "F_" + std::to_string(p_); }

  [[nodiscard]] value_type zero() const { return 0; }
  [[nodiscard]] value_type one() const { return 1 % p_; }

  [[nodiscard]] value_type from_int(std::int64_t v) const {
    if (v >= 0) return static_cast<std::uint64_t>(v) % p_;
    // -(v+1) avoids overflow at INT64_MIN
    std::uint64_t m = (static_cast<std::uint64_t>(-(v + 1)) + 1) % p_;
    return m == 0 ? 0 : p_ - m;
  }

  [[nodiscard]] value_type add(value_type a, value_type b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  [[nodiscard]] value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  [[nodiscard]] value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  [[nodiscard]] value_type mul(value_type a, value_type b) const { return detail::mulmod(a, b, p_); }
  [[nodiscard]] value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero in " + name());
    return detail::powmod(a, p_ - 2, p_);
  }
  [[nodiscard]] bool is_zero(value_type a) const { return a == 0; }

  [[nodiscard]] std::string to_string(value_type a) const { return std::to_string(a); }
  /// Representative in (-p/2, p/2], used where readability matters (exports).
  [[nodiscard]] std::string to_signed_string(value_type a) const {
    if (a > p_ / 2) return "-" + std::to_string(p_ - a);
    return std::to_string(a);
  }

  /// Accepts "n", "-n" and "n/m"; the result is reduced mod p.
  [[nodiscard]] value_type parse(std::string_view text) const {
    text = detail::trim(text);
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
      value_type den = parse(text.substr(slash + 1));
      return mul(parse(text.substr(0, slash)), inv(den));
    }
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
      negative = text.front() == '-';
      text.remove_prefix(1);
    }
    if (text.empty()) throw std::invalid_argument("empty field element");
    value_type acc = 0;
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("bad field element '" + std::string(text) + "'");
      acc = add(mul(acc, 10 % p_), static_cast<std::uint64_t>(c - '0') % p_);
    }
    return negative ? neg(acc) : acc;
  }

  [[nodiscard]] value_type random(Rng& rng) const { return rng.below(p_); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

/// The rationals, with canonical reduced fractions (positive denominator).
class RationalField {
 public:
  using value_type = Rational;

  /// Random elements are integers in [-sample_bound, sample_bound].
  explicit RationalField(std::int64_t sample_bound = 9) : bound_(sample_bound) {}

  [[nodiscard]] std::uint64_t characteristic() const { return 0; }
  [[nodiscard]] std::string name() const { return "QQ"; }

  [[nodiscard]] value_type zero() const { return value_type(0); }
  [[nodiscard]] value_type one() const { return value_type(1); }
  [[nodiscard]] value_type from_int(std::int64_t v) const { return value_type(v); }

  [[nodiscard]] value_type add(const value_type& a, const value_type& b) const { return a + b; }
  [[nodiscard]] value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  [[nodiscard]] value_type neg(const value_type& a) const { return -a; }
  [[nodiscard]] value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  [[nodiscard]] value_type inv(const value_type& a) const {
    if (a == 0) throw std::domain_error("division by zero in QQ");
    return value_type(1) / a;
  }
  [[nodiscard]] bool is_zero(const value_type& a) const { return a == 0; }

  [[nodiscard]] std::string to_string(const value_type& a) const { return a.str(); }
  [[nodiscard]] std::string to_signed_string(const value_type& a) const { return a.str(); }

  [[nodiscard]] value_type parse(std::string_view text) const {
    text = detail::trim(text);
    if (text.empty()) throw std::invalid_argument("empty field element");
    auto slash = text.find('/');
    auto parse_int = [](std::string_view s) {
      s = detail::trim(s);
      std::string_view digits = s;
      if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
      if (digits.empty()) throw std::invalid_argument("bad rational '" + std::string(s) + "'");
      for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("bad rational '" + std::string(s) + "'");
      }
      if (!s.empty() && s.front() == '+') s.remove_prefix(1);
      return BigInt(std::string(s));
    };
    if (slash == std::string_view::npos) return value_type(parse_int(text));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::domain_error("zero denominator");
    return value_type(parse_int(text.substr(0, slash)), den);
  }

  [[nodiscard]] value_type random(Rng& rng) const {
    auto span = static_cast<std::uint64_t>(2 * bound_ + 1);
    return value_type(static_cast<std::int64_t>(rng.below(span)) - bound_);
  }

  bool operator==(const RationalField&) const = default;

 private:
  std::int64_t bound_;
};

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

template <ExactField F>
typename F::value_type random_nonzero(const F& field, Rng& rng) {
  for (;;) {
    auto v = field.random(rng);
    if (!field.is_zero(v)) return v;
  }
}

template <ExactField F>
typename F::value_type pow(const F& field, typename F::value_type base, std::uint64_t e) {
  auto r = field.one();
  while (e != 0) {
    if (e & 1U) r = field.mul(r, base);
    base = field.mul(base, base);
    e >>= 1U;
  }
  return r;
}

/// Runtime field selection: either a prime field or the rationals.
struct FieldSpec {
  enum class Kind { prime, rationals };
  Kind kind = Kind::prime;
  std::uint64_t p = 32003;

  static FieldSpec prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{Kind::prime, p};
  }
  static FieldSpec rationals() { return FieldSpec{Kind::rationals, 0}; }

  /// "Q", "QQ", "0" or "rationals" select the rationals; otherwise a prime.
  static FieldSpec parse(std::string_view text) {
    text = detail::trim(text);
    if (text == "Q" || text == "QQ" || text == "0" || text == "rationals") return rationals();
    std::uint64_t p = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      throw std::invalid_argument("bad field descriptor '" + std::string(text) + "'");
    }
    return prime(p);
  }

  [[nodiscard]] std::uint64_t characteristic() const { return kind == Kind::prime ? p : 0; }
};

/// Calls fn with a concrete field object selected by spec.
template <class Fn>
decltype(auto) with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::prime) return fn(PrimeField(spec.p));
  return fn(RationalField());
}

}  // namespace jetcomm
