#pragma once

// Closure certificates for 3x3 commuting jet pairs: a replayable chain of
// commutation-preserving moves ending at a pair whose constant term of A is
// 1-regular or has at least two distinct base-field eigenvalues.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jetcomm/commutant.hpp"
#include "jetcomm/errors.hpp"
#include "jetcomm/linalg.hpp"
#include "jetcomm/random.hpp"
#include "jetcomm/textio.hpp"
#include "jetcomm/truncmat.hpp"
#include "jetcomm/unipoly.hpp"

namespace jetcomm {

template <ExactField F>
using Pair = std::pair<MatPoly<F>, MatPoly<F>>;

enum class MoveKind { swap, shift_A, shift_B, shear_B, scale_A, conjugate, deform };

inline const char* move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::swap: return "swap";
    case MoveKind::shift_A: return "shift_A";
    case MoveKind::shift_B: return "shift_B";
    case MoveKind::shear_B: return "shear_B";
    case MoveKind::scale_A: return "scale_A";
    case MoveKind::conjugate: return "conjugate";
    case MoveKind::deform: return "deform";
  }
  return "?";
}

inline MoveKind parse_move_kind(const std::string& s) {
  for (auto k : {MoveKind::swap, MoveKind::shift_A, MoveKind::shift_B, MoveKind::shear_B, MoveKind::scale_A,
                 MoveKind::conjugate, MoveKind::deform}) {
    if (s == move_kind_name(k)) return k;
  }
  throw ParseError("unknown move kind '" + s + "'");
}

/// One step of a certificate. Only the payload fields relevant to kind are used:
/// poly for the shift/shear/scale moves, h and h_inv for conjugate, and
/// x, y, lambda, note for deform (the pair becomes (A + lambda X, B + lambda Y)).
template <ExactField F>
struct Move {
  MoveKind kind = MoveKind::swap;
  std::optional<UniPoly<F>> poly;
  std::optional<Matrix<F>> h;
  std::optional<Matrix<F>> h_inv;
  std::optional<MatPoly<F>> x;
  std::optional<MatPoly<F>> y;
  std::optional<typename F::value_type> lambda;
  std::string note;

  static Move swap() { return of_kind(MoveKind::swap); }
  static Move of_kind(MoveKind kind) {
    Move m;
    m.kind = kind;
    return m;
  }
  static Move with_poly(MoveKind kind, UniPoly<F> p) {
    Move m = of_kind(kind);
    m.poly = std::move(p);
    return m;
  }
  static Move conjugate(Matrix<F> h, Matrix<F> h_inv) {
    Move m = of_kind(MoveKind::conjugate);
    m.h = std::move(h);
    m.h_inv = std::move(h_inv);
    return m;
  }
  static Move deform(MatPoly<F> x, MatPoly<F> y, typename F::value_type lambda, std::string note) {
    Move m = of_kind(MoveKind::deform);
    m.x = std::move(x);
    m.y = std::move(y);
    m.lambda = std::move(lambda);
    m.note = std::move(note);
    return m;
  }
};

/// Applies a move without checking commutation (see apply_checked).
template <ExactField F>
Pair<F> apply_move(const Pair<F>& pr, const Move<F>& mv) {
  const auto& [a, b] = pr;
  const F& f = a.field();
  const UniPoly<F> zero(f);
  switch (mv.kind) {
    case MoveKind::swap:
      return {b, a};
    case MoveKind::shift_A:
      return poly_combine(a, b, mv.poly.value(), zero, CombineMode::shift_a);
    case MoveKind::shift_B:
      return poly_combine(a, b, mv.poly.value(), zero, CombineMode::shift_b);
    case MoveKind::shear_B:
      return poly_combine(a, b, mv.poly.value(), zero, CombineMode::shear_b);
    case MoveKind::scale_A:
      return poly_combine(a, b, zero, mv.poly.value(), CombineMode::scale_a);
    case MoveKind::conjugate:
      if (mv.h.value() * mv.h_inv.value() != Matrix<F>::identity(f, a.n())) {
        throw PreconditionError("conjugate move: h_inv is not the inverse of h");
      }
      return {a.conjugated(*mv.h, *mv.h_inv), b.conjugated(*mv.h, *mv.h_inv)};
    case MoveKind::deform:
      return {a + mv.x.value().scaled(mv.lambda.value()), b + mv.y.value().scaled(*mv.lambda)};
  }
  throw std::logic_error("unknown move kind");
}

/// Whether (A + lambda X, B + lambda Y) commutes for every lambda: the
/// coefficients of lambda^0, lambda^1 and lambda^2 vanish separately.
template <ExactField F>
bool deformation_commutes(const Pair<F>& pr, const MatPoly<F>& x, const MatPoly<F>& y) {
  const auto& [a, b] = pr;
  return commutator(a, b).is_zero() && (commutator(a, y) + commutator(x, b)).is_zero() &&
         commutator(x, y).is_zero();
}

/// The inverse move; deform has none.
template <ExactField F>
std::optional<Move<F>> inverse_move(const Move<F>& mv, std::size_t k) {
  switch (mv.kind) {
    case MoveKind::swap:
      return mv;
    case MoveKind::shift_A:
    case MoveKind::shift_B:
    case MoveKind::shear_B: {
      auto r = mv;
      r.poly = mv.poly->scaled(mv.poly->field().neg(mv.poly->field().one()));
      return r;
    }
    case MoveKind::scale_A: {
      // (1 + q)^{-1} = 1 + q' with q'(0) = 0
      const F& f = mv.poly->field();
      auto unit = *mv.poly + UniPoly<F>::constant(f, f.one());
      auto r = mv;
      r.poly = series_inverse(unit, k) - UniPoly<F>::constant(f, f.one());
      return r;
    }
    case MoveKind::conjugate:
      return Move<F>::conjugate(*mv.h_inv, *mv.h);
    case MoveKind::deform:
      return std::nullopt;
  }
  return std::nullopt;
}

enum class TerminalKind { in_U, spectrum_split, stalled };

template <ExactField F>
struct Terminal {
  TerminalKind kind = TerminalKind::stalled;
  std::optional<typename F::value_type> lambda;  // deformation parameter that produced the split, if any
  std::string reason;
};

template <ExactField F>
struct ClosureCertificate {
  MatPoly<F> input_a;
  MatPoly<F> input_b;
  std::vector<Move<F>> moves;
  Terminal<F> terminal;
};

/// Distinct eigenvalues of M lying in the base field, via the characteristic polynomial.
template <ExactField F>
std::size_t base_eigenvalue_count(const Matrix<F>& m) {
  return squarefree_split_info(charpoly(m)).distinct_base_roots;
}

/// The eigenvalue lambda when charpoly(M) = (x - lambda)^n with lambda in the base field.
template <ExactField F>
std::optional<typename F::value_type> unique_eigenvalue(const Matrix<F>& m) {
  const F& f = m.field();
  const auto p = charpoly(m);
  const auto n = static_cast<std::int64_t>(m.rows());
  const auto nf = f.from_int(n);
  if (f.is_zero(nf)) return std::nullopt;
  const auto lambda = f.neg(f.mul(p.coeff(static_cast<std::size_t>(n - 1)), f.inv(nf)));
  auto expected = UniPoly<F>::constant(f, f.one());
  for (std::int64_t i = 0; i < n; ++i) expected = expected * UniPoly<F>::linear_root(f, lambda);
  if (expected != p) return std::nullopt;
  return lambda;
}

namespace detail {

template <ExactField F>
bool is_rank_one_nilpotent(const Matrix<F>& m) {
  return rank(m) == 1 && (m * m).is_zero();
}

template <ExactField F>
void push_if_nontrivial(std::vector<Move<F>>& moves, Pair<F>& pr, Move<F> mv) {
  if (mv.poly && mv.poly->degree() < 0) return;
  pr = apply_move(pr, mv);
  moves.push_back(std::move(mv));
}

}  // namespace detail

/// Brings a commuting 3x3 pair with rank-1 nilpotent A_0 to the form
/// A_0 = e_{12}, a = a' = 0, b = 1, b' = 0 (entries named row by row a..i).
template <ExactField F>
std::pair<Pair<F>, std::vector<Move<F>>> normalize(const MatPoly<F>& a, const MatPoly<F>& b) {
  a.require_compatible(b);
  if (a.n() != 3) throw PreconditionError("normalize: n must be 3");
  if (!commutator(a, b).is_zero()) throw PreconditionError("normalize: pair does not commute");
  const F& f = a.field();
  const auto& a0 = a.coeff(0);
  if (!detail::is_rank_one_nilpotent(a0)) throw PreconditionError("normalize: A_0 is not rank-1 nilpotent");
  const std::size_t k = a.k();

  Pair<F> pr{a, b};
  std::vector<Move<F>> moves;

  // P = [A_0 e_j, e_j, w] with e_j the first standard vector outside ker A_0 and
  // w the first kernel basis vector independent of A_0 e_j; then P^{-1} A_0 P = e_{12}.
  std::size_t j = 0;
  while ((a0 * Matrix<F>::unit(f, 3, j, 0)).is_zero()) ++j;
  Matrix<F> p(f, 3, 3);
  for (std::size_t r = 0; r < 3; ++r) {
    p(r, 0) = a0(r, j);
    p(r, 1) = r == j ? f.one() : f.zero();
  }
  const auto ker = kernel_basis(a0);
  for (const auto& w : ker.vectors()) {
    for (std::size_t r = 0; r < 3; ++r) p(r, 2) = w[r];
    if (inverse(p)) break;
  }
  auto p_inv = inverse(p);
  if (!p_inv) throw InvariantViolation("normalize: failed to build a Jordan basis");
  if (p != Matrix<F>::identity(f, 3)) detail::push_if_nontrivial(moves, pr, Move<F>::conjugate(*p_inv, p));

  const auto minus = [&](const UniPoly<F>& q) { return q.scaled(f.neg(f.one())); };
  detail::push_if_nontrivial(moves, pr, Move<F>::with_poly(MoveKind::shift_A, minus(pr.first.entry(0, 0))));
  detail::push_if_nontrivial(moves, pr, Move<F>::with_poly(MoveKind::shift_B, minus(pr.second.entry(0, 0))));
  const auto bt = pr.first.entry(0, 1);
  const auto q = series_inverse(bt, k) - UniPoly<F>::constant(f, f.one());
  detail::push_if_nontrivial(moves, pr, Move<F>::with_poly(MoveKind::scale_A, truncated(q, k)));
  detail::push_if_nontrivial(moves, pr, Move<F>::with_poly(MoveKind::shear_B, minus(pr.second.entry(0, 1))));
  return {std::move(pr), std::move(moves)};
}

/// The four polynomial relations that commutation forces on a normalized pair.
template <ExactField F>
bool derived_relations_check(const MatPoly<F>& a, const MatPoly<F>& b) {
  a.require_compatible(b);
  if (a.n() != 3) throw PreconditionError("derived_relations_check: n must be 3");
  const std::size_t k = a.k();
  const auto m = [k](const UniPoly<F>& x, const UniPoly<F>& y) { return mul_trunc(x, y, k); };
  const auto c = a.entry(0, 2), e = a.entry(1, 1), g = a.entry(2, 0), h = a.entry(2, 1), i = a.entry(2, 2);
  const auto c1 = b.entry(0, 2), d1 = b.entry(1, 0), e1 = b.entry(1, 1), f1 = b.entry(1, 2);
  const auto g1 = b.entry(2, 0), h1 = b.entry(2, 1), i1 = b.entry(2, 2);
  return d1 == m(c1, g) - m(c, g1) && e1 == m(c1, h) - m(c, h1) && f1 == m(c1, i) - m(c, i1) &&
         g1 == m(i, h1) - m(i1, h) + m(c1, m(h, h)) - m(c, m(h, h1)) - m(e, h1);
}

/// The deformation directions X, Y for a normalized commuting pair.
template <ExactField F>
std::pair<MatPoly<F>, MatPoly<F>> build_XY(const MatPoly<F>& a, const MatPoly<F>& b) {
  if (!derived_relations_check(a, b)) throw PreconditionError("build_XY: pair is not a normalized commuting pair");
  const F& f = a.field();
  const std::size_t k = a.k();
  const auto m = [k](const UniPoly<F>& x, const UniPoly<F>& y) { return mul_trunc(x, y, k); };
  const auto c = a.entry(0, 2), e = a.entry(1, 1), h = a.entry(2, 1), i = a.entry(2, 2);
  const auto c1 = b.entry(0, 2);
  const auto one = UniPoly<F>::constant(f, f.one());
  const auto neg = [&](const UniPoly<F>& p) { return p.scaled(f.neg(f.one())); };

  MatPoly<F> x(f, 3, k);
  x.set_entry(1, 0, i - e - m(c, h));
  x.set_entry(1, 1, one);
  x.set_entry(2, 0, neg(h));
  x.set_entry(2, 2, one);
  MatPoly<F> y(f, 3, k);
  y.set_entry(1, 0, neg(m(h, c1)));
  y.set_entry(1, 2, c1);
  if (!deformation_commutes<F>({a, b}, x, y)) throw InvariantViolation("build_XY: deformation identities fail");
  return {std::move(x), std::move(y)};
}

/// Whether the constant term of A + lambda X has two distinct eigenvalues.
/// Accepts lambda when the characteristic polynomial has at least two
/// distinct base-field roots or is squarefree (then the matrix is 1-regular).
template <ExactField F>
std::optional<typename F::value_type> spectrum_splits(const MatPoly<F>& a, const MatPoly<F>& x,
                                                      std::size_t samples, Rng& rng) {
  const F& f = a.field();
  for (std::size_t s = 0; s < samples; ++s) {
    const auto lambda = random_nonzero(f, rng);
    const auto info = squarefree_split_info(charpoly(a.coeff(0) + x.coeff(0).scaled(lambda)));
    if (info.distinct_base_roots >= 2 || info.is_squarefree) return lambda;
  }
  return std::nullopt;
}

inline constexpr std::size_t kLambdaSamples = 16;

/// Emits a closure certificate for a commuting 3x3 pair.
template <ExactField F>
ClosureCertificate<F> certify_closure(const MatPoly<F>& a, const MatPoly<F>& b, std::uint64_t seed) {
  a.require_compatible(b);
  if (a.n() != 3) throw PreconditionError("certify_closure: n must be 3");
  if (!commutator(a, b).is_zero()) throw PreconditionError("certify_closure: pair does not commute");
  const F& f = a.field();
  const std::size_t k = a.k();
  Rng rng(seed);

  ClosureCertificate<F> cert{a, b, {}, {}};
  Pair<F> pr{a, b};
  auto push = [&](Move<F> mv) {
    pr = apply_move(pr, mv);
    cert.moves.push_back(std::move(mv));
  };
  auto finish = [&](TerminalKind kind, std::string reason, std::optional<typename F::value_type> lambda = {}) {
    cert.terminal = Terminal<F>{kind, std::move(lambda), std::move(reason)};
    return cert;
  };
  auto split_count = [](const Matrix<F>& m) { return base_eigenvalue_count(m); };

  for (int round = 0; round < 8; ++round) {
    if (is_one_regular(pr.first.coeff(0))) return finish(TerminalKind::in_U, "A_0 is 1-regular");
    if (is_one_regular(pr.second.coeff(0))) {
      push(Move<F>::swap());
      return finish(TerminalKind::in_U, "B_0 is 1-regular");
    }
    if (split_count(pr.first.coeff(0)) >= 2) return finish(TerminalKind::spectrum_split, "A_0 has two eigenvalues");
    if (split_count(pr.second.coeff(0)) >= 2) {
      push(Move<F>::swap());
      return finish(TerminalKind::spectrum_split, "B_0 has two eigenvalues");
    }

    // Both constant terms now have a single eigenvalue; shift them to nilpotent.
    const auto la = unique_eigenvalue(pr.first.coeff(0));
    const auto lb = unique_eigenvalue(pr.second.coeff(0));
    if (!la || !lb) return finish(TerminalKind::stalled, "irrational spectrum");
    if (!f.is_zero(*la)) push(Move<F>::with_poly(MoveKind::shift_A, UniPoly<F>::constant(f, f.neg(*la))));
    if (!f.is_zero(*lb)) push(Move<F>::with_poly(MoveKind::shift_B, UniPoly<F>::constant(f, f.neg(*lb))));

    const bool a0_zero = pr.first.coeff(0).is_zero();
    const bool b0_zero = pr.second.coeff(0).is_zero();
    if (!a0_zero) {
      // Nonzero, nilpotent, not 1-regular: rank-1 in size 3.
      auto [normal, moves] = normalize(pr.first, pr.second);
      for (auto& mv : moves) cert.moves.push_back(std::move(mv));
      pr = std::move(normal);
      auto [x, y] = build_XY(pr.first, pr.second);
      const auto lambda = spectrum_splits(pr.first, x, kLambdaSamples, rng);
      if (!lambda) return finish(TerminalKind::stalled, "no splitting lambda within the sample budget");
      push(Move<F>::deform(std::move(x), std::move(y), *lambda, "normalized rank-1 deformation"));
      if (split_count(pr.first.coeff(0)) >= 2) {
        return finish(TerminalKind::spectrum_split, "deformed A_0 has two eigenvalues", lambda);
      }
      return finish(TerminalKind::in_U, "deformed A_0 has three distinct eigenvalues", lambda);
    }
    if (!b0_zero) {
      push(Move<F>::swap());
      continue;
    }
    // A_0 = B_0 = 0.
    if (!pr.first.is_zero()) {
      const auto r = *pr.first.valuation();
      push(Move<F>::deform(MatPoly<F>(f, 3, k), pr.first.shifted_down(r), random_nonzero(f, rng),
                           "add a multiple of A shifted down by its valuation to B"));
      continue;
    }
    if (!pr.second.is_zero()) {
      push(Move<F>::swap());
      continue;
    }
    MatPoly<F> jordan(f, 3, k);
    jordan.coeff(0) = jordan_block(f, 3);
    push(Move<F>::deform(std::move(jordan), MatPoly<F>(f, 3, k), random_nonzero(f, rng), "scale a 1-regular pair to the origin"));
  }
  return finish(TerminalKind::stalled, "round budget exhausted");
}

struct ReplayResult {
  bool ok = true;
  std::string failure;
};

/// Replays a certificate, checking commutation after every move, the
/// deformation identities for each deform, and the terminal invariant.
template <ExactField F>
ReplayResult replay(const ClosureCertificate<F>& cert) {
  Pair<F> pr{cert.input_a, cert.input_b};
  auto fail = [](std::string why) { return ReplayResult{false, std::move(why)}; };
  if (!commutator(pr.first, pr.second).is_zero()) return fail("input pair does not commute");
  for (std::size_t i = 0; i < cert.moves.size(); ++i) {
    const auto& mv = cert.moves[i];
    const std::string where = "move " + std::to_string(i + 1) + " (" + move_kind_name(mv.kind) + ")";
    if (mv.kind == MoveKind::deform && !deformation_commutes(pr, *mv.x, *mv.y)) {
      return fail(where + ": deformation family does not commute for all lambda");
    }
    try {
      pr = apply_move(pr, mv);
    } catch (const std::exception& e) {
      return fail(where + ": " + e.what());
    }
    if (!commutator(pr.first, pr.second).is_zero()) return fail(where + ": commutation lost");
  }
  const auto& a0 = pr.first.coeff(0);
  switch (cert.terminal.kind) {
    case TerminalKind::in_U:
      if (!is_one_regular(a0)) return fail("terminal in_U but final A_0 is not 1-regular");
      break;
    case TerminalKind::spectrum_split:
      if (base_eigenvalue_count(a0) < 2) return fail("terminal spectrum_split but final A_0 has < 2 base eigenvalues");
      break;
    case TerminalKind::stalled:
      return fail("stalled: " + cert.terminal.reason);
  }
  return {};
}

/// Final pair after all moves.
template <ExactField F>
Pair<F> final_pair(const ClosureCertificate<F>& cert) {
  Pair<F> pr{cert.input_a, cert.input_b};
  for (const auto& mv : cert.moves) pr = apply_move(pr, mv);
  return pr;
}

// Text form, one record per line:
//   certificate n <n> k <k> char <p>
//   A <n^2(k+1) scalars, s-major row-major>
//   B <...>
//   move swap | move shift_A <k+1 coefficients> | move conjugate <9 H> <9 H^-1>
//   move deform <lambda> <X scalars> <Y scalars> note <free text>
//   terminal in_U | terminal spectrum_split [lambda] | terminal stalled <reason>

namespace detail {

template <ExactField F>
void write_scalars(std::ostream& os, const F& f, const Vec<F>& v) {
  for (const auto& x : v) os << " " << f.to_string(x);
}

template <ExactField F>
Vec<F> read_scalars(const F& f, std::istringstream& in, std::size_t count) {
  Vec<F> v;
  v.reserve(count);
  std::string tok;
  for (std::size_t i = 0; i < count; ++i) {
    if (!(in >> tok)) throw ParseError("certificate line ended early");
    v.push_back(parse_scalar(f, tok));
  }
  return v;
}

inline std::string rest_of_line(std::istringstream& in) {
  std::string rest;
  std::getline(in, rest);
  const auto start = rest.find_first_not_of(' ');
  return start == std::string::npos ? std::string() : rest.substr(start);
}

}  // namespace detail

template <ExactField F>
std::string serialize(const ClosureCertificate<F>& cert) {
  const F& f = cert.input_a.field();
  const std::size_t n = cert.input_a.n();
  const std::size_t k = cert.input_a.k();
  std::ostringstream os;
  os << "certificate n " << n << " k " << k << " char " << f.characteristic() << "\n";
  os << "A";
  detail::write_scalars(os, f, flatten(cert.input_a));
  os << "\nB";
  detail::write_scalars(os, f, flatten(cert.input_b));
  os << "\n";
  for (const auto& mv : cert.moves) {
    os << "move " << move_kind_name(mv.kind);
    switch (mv.kind) {
      case MoveKind::swap:
        break;
      case MoveKind::shift_A:
      case MoveKind::shift_B:
      case MoveKind::shear_B:
      case MoveKind::scale_A: {
        Vec<F> c(k + 1, f.zero());
        for (std::size_t i = 0; i <= k; ++i) c[i] = mv.poly->coeff(i);
        detail::write_scalars(os, f, c);
        break;
      }
      case MoveKind::conjugate:
        detail::write_scalars(os, f, mv.h->data());
        detail::write_scalars(os, f, mv.h_inv->data());
        break;
      case MoveKind::deform:
        os << " " << f.to_string(*mv.lambda);
        detail::write_scalars(os, f, flatten(*mv.x));
        detail::write_scalars(os, f, flatten(*mv.y));
        os << " note " << mv.note;
        break;
    }
    os << "\n";
  }
  os << "terminal ";
  switch (cert.terminal.kind) {
    case TerminalKind::in_U:
      os << "in_U";
      break;
    case TerminalKind::spectrum_split:
      os << "spectrum_split";
      if (cert.terminal.lambda) os << " " << f.to_string(*cert.terminal.lambda);
      break;
    case TerminalKind::stalled:
      os << "stalled " << cert.terminal.reason;
      break;
  }
  os << "\n";
  return os.str();
}

template <ExactField F>
ClosureCertificate<F> parse_certificate(const F& f, const std::string& text) {
  std::istringstream all(text);
  std::string line;
  auto next_line = [&]() {
    while (std::getline(all, line)) {
      if (!line.empty() && line[0] != '#') return true;
    }
    return false;
  };
  if (!next_line()) throw ParseError("empty certificate");
  std::size_t n = 0, k = 0;
  std::uint64_t ch = 0;
  {
    std::istringstream in(line);
    std::string w1, w2, w3, w4;
    if (!(in >> w1 >> w2 >> n >> w3 >> k >> w4 >> ch) || w1 != "certificate" || w2 != "n" || w3 != "k" || w4 != "char") {
      throw ParseError("bad certificate header");
    }
    if (ch != f.characteristic()) throw ParseError("certificate characteristic does not match field");
  }
  const std::size_t len = n * n * (k + 1);
  auto read_matpoly_line = [&](const std::string& tag) {
    if (!next_line()) throw ParseError("missing " + tag + " line");
    std::istringstream in(line);
    std::string w;
    in >> w;
    if (w != tag) throw ParseError("expected " + tag + " line");
    return unflatten(f, n, k, detail::read_scalars(f, in, len));
  };
  auto a = read_matpoly_line("A");
  auto b = read_matpoly_line("B");
  ClosureCertificate<F> cert{a, b, {}, {}};
  bool have_terminal = false;
  while (next_line()) {
    std::istringstream in(line);
    std::string w;
    in >> w;
    if (w == "move") {
      std::string kind_s;
      in >> kind_s;
      const auto kind = parse_move_kind(kind_s);
      switch (kind) {
        case MoveKind::swap:
          cert.moves.push_back(Move<F>::swap());
          break;
        case MoveKind::shift_A:
        case MoveKind::shift_B:
        case MoveKind::shear_B:
        case MoveKind::scale_A:
          cert.moves.push_back(Move<F>::with_poly(kind, UniPoly<F>(f, detail::read_scalars(f, in, k + 1))));
          break;
        case MoveKind::conjugate: {
          Matrix<F> h(f, n, n, detail::read_scalars(f, in, n * n));
          Matrix<F> h_inv(f, n, n, detail::read_scalars(f, in, n * n));
          cert.moves.push_back(Move<F>::conjugate(std::move(h), std::move(h_inv)));
          break;
        }
        case MoveKind::deform: {
          const auto lambda = detail::read_scalars(f, in, 1).front();
          auto x = unflatten(f, n, k, detail::read_scalars(f, in, len));
          auto y = unflatten(f, n, k, detail::read_scalars(f, in, len));
          std::string note_word;
          in >> note_word;
          if (note_word != "note") throw ParseError("deform move is missing its note");
          cert.moves.push_back(Move<F>::deform(std::move(x), std::move(y), lambda, detail::rest_of_line(in)));
          break;
        }
      }
    } else if (w == "terminal") {
      std::string kind_s;
      in >> kind_s;
      if (kind_s == "in_U") {
        cert.terminal = {TerminalKind::in_U, std::nullopt, ""};
      } else if (kind_s == "spectrum_split") {
        std::string tok;
        std::optional<typename F::value_type> lambda;
        if (in >> tok) lambda = parse_scalar(f, tok);
        cert.terminal = {TerminalKind::spectrum_split, lambda, ""};
      } else if (kind_s == "stalled") {
        cert.terminal = {TerminalKind::stalled, std::nullopt, detail::rest_of_line(in)};
      } else {
        throw ParseError("unknown terminal '" + kind_s + "'");
      }
      have_terminal = true;
    } else {
      throw ParseError("unexpected certificate line: " + line);
    }
  }
  if (!have_terminal) throw ParseError("certificate has no terminal line");
  return cert;
}

}  // namespace jetcomm
