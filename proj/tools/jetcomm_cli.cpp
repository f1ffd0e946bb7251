// Command-line driver: batch verification sweeps and report emission.
//
// Exit status: 0 all checked properties hold, 1 a property failed,
// 2 bad input (unreadable file, malformed text, invalid option value),
// 3 an input violates an operation's precondition.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "jetcomm/jetcomm.hpp"

namespace {

using namespace jetcomm;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitInfeasible = 3;

struct Globals {
  std::string field = "32003";
  std::uint64_t seed = 0;
  bool structured = false;
  std::size_t threads = 0;
};

// Human-readable lines always; "record <kind> key=value ..." lines only with
// --structured.
class Report {
 public:
  explicit Report(bool structured) : structured_(structured) {}

  void line(const std::string& s) const { std::cout << s << "\n"; }

  class Record {
   public:
    Record(bool on, std::string kind) : on_(on) {
      if (on_) os_ << "record " << kind;
    }
    Record(const Record&) = delete;
    Record& operator=(const Record&) = delete;
    ~Record() {
      if (on_) std::cout << os_.str() << "\n";
    }
    template <class T>
    Record& kv(const std::string& key, const T& value) {
      if (on_) os_ << " " << key << "=" << value;
      return *this;
    }
    Record& kv(const std::string& key, bool value) { return kv(key, value ? 1 : 0); }

   private:
    bool on_;
    std::ostringstream os_;
  };

  [[nodiscard]] Record record(const std::string& kind) const { return Record(structured_, kind); }

 private:
  bool structured_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  out << text;
}

std::string pass_fail(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

template <ExactField F>
std::string field_label(const F& f) {
  return f.characteristic() == 0 ? std::string("QQ") : "F_" + std::to_string(f.characteristic());
}

// ---------------------------------------------------------------------------
// verify

struct SweepOptions {
  std::size_t n = 3;
  std::size_t k = 2;
  std::size_t samples = 100;
};

template <ExactField F>
int verify_thm24(const F& f, const Globals& g, const SweepOptions& o) {
  struct Outcome {
    bool regular_requested = false;
    Thm24Report rep;
    std::string error;
  };
  const std::size_t full = o.n * (o.k + 1);
  auto results = parallel_map(o.samples, [&](std::size_t i) {
    Rng rng(derive_seed(g.seed, i));
    Outcome out;
    out.regular_requested = o.n < 2 || i % 2 == 0;
    const auto a0 = out.regular_requested ? random_one_regular(f, o.n, rng) : random_non_one_regular(f, o.n, rng);
    try {
      out.rep = thm24_battery(random_with_constant(a0, o.k, rng));
    } catch (const InvariantViolation& e) {
      out.error = e.what();
    }
    return out;
  }, g.threads);

  Report r(g.structured);
  std::size_t regular = 0, regular_ok = 0, irregular = 0, irregular_ok = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    const auto& rep = res.rep;
    const bool agree = res.error.empty();
    if (rep.one_regular) {
      ++regular;
      if (agree && rep.commutant_dim == full) ++regular_ok;
    } else {
      ++irregular;
      if (agree) ++irregular_ok;
    }
    r.record("thm24")
        .kv("index", i)
        .kv("one_regular", rep.one_regular)
        .kv("powers_independent", rep.powers_independent)
        .kv("dim_FAt", rep.dim_FAt)
        .kv("commutant_dim", rep.commutant_dim)
        .kv("commutant_equals_power_span", rep.commutant_equals_power_span)
        .kv("q_param_roundtrip_ok", rep.q_param_roundtrip_ok)
        .kv("agree", agree);
    if (!agree) r.line("  sample " + std::to_string(i) + ": " + res.error);
  }
  const bool ok = regular_ok == regular && irregular_ok == irregular;
  r.line("verify thm24 field=" + field_label(f) + " n=" + std::to_string(o.n) + " k=" + std::to_string(o.k) +
         " samples=" + std::to_string(o.samples) + " seed=" + std::to_string(g.seed));
  r.line("  1-regular A_0: " + std::to_string(regular_ok) + "/" + std::to_string(regular) +
         " with all five conditions true and commutant dim = n(k+1) = " + std::to_string(o.n) + "*" +
         std::to_string(o.k + 1) + " = " + std::to_string(full));
  r.line("  non-1-regular A_0: " + std::to_string(irregular_ok) + "/" + std::to_string(irregular) +
         " with all five conditions false");
  r.line("  result: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

template <ExactField F>
int verify_lemma23(const F& f, const Globals& g, const SweepOptions& o) {
  auto results = parallel_map(o.samples, [&](std::size_t i) {
    Rng rng(derive_seed(g.seed, i));
    const auto a = MatPoly<F>::random(f, o.n, o.k, rng);
    const auto qs = random_qs(f, o.n, o.k, rng);
    MatPoly<F> direct(f, o.n, o.k);
    for (std::size_t j = 0; j <= o.k; ++j) direct += evaluate_poly(qs[j], a).shifted_up(j);
    return b_from_q(qs, a) == direct;
  }, g.threads);

  Report r(g.structured);
  std::size_t good = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    good += results[i] ? 1 : 0;
    r.record("lemma23").kv("index", i).kv("equal", results[i]);
  }
  const bool ok = good == results.size();
  r.line("verify lemma23 field=" + field_label(f) + " n=" + std::to_string(o.n) + " k=" + std::to_string(o.k) +
         " samples=" + std::to_string(o.samples) + " seed=" + std::to_string(g.seed));
  r.line("  closed form vs sum_j q_j(A) t^j: " + std::to_string(good) + "/" + std::to_string(results.size()) +
         " exact matches");
  r.line("  result: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// commutant

struct CommutantOptions {
  std::string input;
  std::string kind = "one-regular";
  std::size_t n = 3;
  std::size_t k = 2;
  bool basis = false;
};

template <ExactField F>
int run_commutant(const F& f, const Globals& g, const CommutantOptions& o) {
  MatPoly<F> a(f, 1, 0);
  if (!o.input.empty()) {
    a = parse_matpoly(f, read_file(o.input));
  } else {
    Rng rng(g.seed);
    Matrix<F> a0(f, o.n, o.n);
    if (o.kind == "one-regular") a0 = random_one_regular(f, o.n, rng);
    else if (o.kind == "non-regular") a0 = random_non_one_regular(f, o.n, rng);
    else if (o.kind == "any") a0 = Matrix<F>::random(f, o.n, o.n, rng);
    else throw std::invalid_argument("unknown --kind '" + o.kind + "'");
    a = random_with_constant(a0, o.k, rng);
  }
  const auto basis = commutant_basis(a);
  const bool regular = is_one_regular(a.coeff(0));
  const auto powers = power_span(a);
  const std::size_t full = a.n() * (a.k() + 1);
  Report r(g.structured);
  r.line("commutant field=" + field_label(f) + " n=" + std::to_string(a.n()) + " k=" + std::to_string(a.k()));
  r.line("  A_0 1-regular: " + std::string(regular ? "yes" : "no"));
  r.line("  dim commutant = " + std::to_string(basis.dim()) + " (n(k+1) = " + std::to_string(full) + ")");
  r.line("  commutant = span of A^i t^j: " + std::string(basis == powers ? "yes" : "no"));
  r.record("commutant")
      .kv("n", a.n())
      .kv("k", a.k())
      .kv("one_regular", regular)
      .kv("dim", basis.dim())
      .kv("n_times_k_plus_1", full)
      .kv("equals_power_span", basis == powers);
  if (o.basis) {
    for (std::size_t i = 0; i < basis.dim(); ++i) {
      std::cout << "# basis element " << i + 1 << "\n" << format_matpoly(unflatten(f, a.n(), a.k(), basis.vectors()[i]));
    }
  }
  const bool ok = !regular || (basis.dim() == full && basis == powers);
  return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// lift

struct LiftOptions {
  std::string input;
  std::string next;
  std::string demo;
  std::size_t n = 3;
  std::size_t k = 2;
  std::size_t samples = 100;
};

template <ExactField F>
int lift_demo_remark28(const F& f, const Globals& g, const LiftOptions& o) {
  const std::size_t n = 2;
  const auto x = Matrix<F>::unit(f, n, 0, 1);
  const auto y = Matrix<F>::unit(f, n, 1, 0);
  MatPoly<F> a(f, n, 1);
  MatPoly<F> b(f, n, 1);
  a.coeff(1) = x;
  b.coeff(1) = y;
  Report r(g.structured);
  r.line("lift demo: A = X t, B = Y t in M_2[t]/t^2 with X = e12, Y = e21");
  r.line("  order-2 coefficient of [A + P t^2, B + Q t^2] is [X,Y] + [A_0,Q] + [P,B_0] = [X,Y] since A_0 = B_0 = 0");
  const auto xy = commutator(x, y);
  r.line("  [X,Y] = diag(" + f.to_signed_string(xy(0, 0)) + ", " + f.to_signed_string(xy(1, 1)) + ")");
  // A_next = 0 plus random choices; every one must be infeasible.
  const std::size_t trials = std::max<std::size_t>(o.samples, 1);
  std::size_t infeasible = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(g.seed, i));
    const auto p = i == 0 ? Matrix<F>(f, n, n) : Matrix<F>::random(f, n, n, rng);
    const bool none = !lift_pair(a, b, p).has_value();
    infeasible += none ? 1 : 0;
    r.record("lift_demo").kv("index", i).kv("infeasible", none);
  }
  const bool ok = infeasible == trials;
  r.line("  choices of P tried: " + std::to_string(trials) + ", infeasible: " + std::to_string(infeasible));
  r.line(std::string("  result: ") + (ok ? "infeasible (expected)" : "a lift was found (unexpected)"));
  return ok ? kExitOk : kExitFailed;
}

template <ExactField F>
int run_lift(const F& f, const Globals& g, const LiftOptions& o) {
  if (!o.demo.empty()) {
    if (o.demo != "remark28") throw std::invalid_argument("unknown --demo '" + o.demo + "'");
    return lift_demo_remark28(f, g, o);
  }
  Report r(g.structured);
  if (!o.input.empty()) {
    const auto [a, b] = parse_pair(f, read_file(o.input));
    Matrix<F> next(f, a.n(), a.n());
    if (!o.next.empty()) {
      const auto m = parse_matpoly(f, read_file(o.next));
      if (m.n() != a.n() || m.k() != 0) throw ParseError("--next must hold one n x n matrix (matpoly n 0 char)");
      next = m.coeff(0);
    }
    const auto b_next = lift_pair(a, b, next);
    if (!b_next) {
      r.line("lift: no B_next exists (the order-" + std::to_string(a.k() + 1) +
             " obstruction is not in the image of ad(A_0))");
      r.record("lift").kv("feasible", false);
      return kExitInfeasible;
    }
    const auto [a2, b2] = extend_pair(a, b, next, *b_next);
    const bool ok = commutator(a2, b2).is_zero();
    r.record("lift").kv("feasible", true).kv("commutes", ok);
    std::cout << format_matpoly(b2);
    return ok ? kExitOk : kExitFailed;
  }

  struct Outcome {
    bool lifted = false;
    bool commutes = false;
    bool in_ad_image = false;
  };
  auto results = parallel_map(o.samples, [&](std::size_t i) {
    Rng rng(derive_seed(g.seed, i));
    const auto [a, b] = random_u_pair(f, o.n, o.k, rng);
    const auto next = Matrix<F>::random(f, o.n, o.n, rng);
    Outcome out;
    out.in_ad_image = ad_image_contains(a.coeff(0), cross_commutator_sum(a, b));
    if (const auto b_next = lift_pair(a, b, next)) {
      out.lifted = true;
      const auto [a2, b2] = extend_pair(a, b, next, *b_next);
      out.commutes = commutator(a2, b2).is_zero();
    }
    return out;
  }, g.threads);
  std::size_t lifted = 0, commuting = 0, in_image = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    lifted += res.lifted;
    commuting += res.commutes;
    in_image += res.in_ad_image;
    r.record("lift")
        .kv("index", i)
        .kv("feasible", res.lifted)
        .kv("commutes", res.commutes)
        .kv("cross_sum_in_ad_image", res.in_ad_image);
  }
  const std::size_t s = results.size();
  const bool ok = lifted == s && commuting == s && in_image == s;
  r.line("lift field=" + field_label(f) + " n=" + std::to_string(o.n) + " k=" + std::to_string(o.k) +
         " samples=" + std::to_string(s) + " seed=" + std::to_string(g.seed));
  r.line("  pairs with A_0 1-regular lifted to order k+1 = " + std::to_string(o.k + 1) + ": " +
         std::to_string(lifted) + "/" + std::to_string(s) + ", commuting after lift: " + std::to_string(commuting));
  r.line("  [A_1,B_k] + ... + [A_k,B_1] in image of ad(A_0): " + std::to_string(in_image) + "/" + std::to_string(s));
  r.line("  result: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// jetideal

struct JetOptions {
  std::size_t n = 2;
  std::size_t k = 1;
  std::string format = "generic";
  std::string output;
  std::string input;
  std::size_t samples = 20;
};

template <ExactField F>
int jet_export(const F& f, const Globals&, const JetOptions& o) {
  const auto fmt = parse_export_format(o.format);
  write_output(o.output, export_ideal(generators(f, o.n, o.k), o.n, o.k, fmt));
  return kExitOk;
}

template <ExactField F>
int jet_tangent(const F& f, const Globals& g, const JetOptions& o) {
  Report r(g.structured);
  if (!o.input.empty()) {
    const auto [a, b] = parse_pair(f, read_file(o.input));
    const auto dim = jacobian_tangent_dim(a, b);
    const std::size_t expected = (a.n() * a.n() + a.n()) * (a.k() + 1);
    r.line("tangent n=" + std::to_string(a.n()) + " k=" + std::to_string(a.k()) + " dim=" + std::to_string(dim) +
           " (n^2+n)(k+1)=" + std::to_string(expected));
    r.record("tangent").kv("n", a.n()).kv("k", a.k()).kv("dim", dim).kv("expected", expected);
    return kExitOk;
  }
  const std::size_t expected = (o.n * o.n + o.n) * (o.k + 1);
  auto dims = parallel_map(o.samples, [&](std::size_t i) {
    Rng rng(derive_seed(g.seed, i));
    const auto [a, b] = random_u_pair(f, o.n, o.k, rng);
    return jacobian_tangent_dim(a, b);
  }, g.threads);
  std::size_t good = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    good += dims[i] == expected;
    r.record("tangent").kv("index", i).kv("dim", dims[i]).kv("expected", expected);
  }
  const bool ok = good == dims.size();
  r.line("tangent field=" + field_label(f) + " n=" + std::to_string(o.n) + " k=" + std::to_string(o.k) +
         " samples=" + std::to_string(o.samples) + " seed=" + std::to_string(g.seed));
  r.line("  points with A_0 1-regular at tangent dim (n^2+n)(k+1) = (" + std::to_string(o.n * o.n) + "+" +
         std::to_string(o.n) + ")*" + std::to_string(o.k + 1) + " = " + std::to_string(expected) + ": " +
         std::to_string(good) + "/" + std::to_string(dims.size()));
  r.line("  result: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// red

struct RedOptions {
  Int k = 1;
  Int n_max = 60;
  Int a = 8;
  Int b = 5;
  std::size_t trials = 50;
};

void print_bounds(const Report& r, const ReducibilityReport& rep) {
  const auto& s = rep.shape;
  r.line("bounds a=" + std::to_string(s.a) + " b=" + std::to_string(s.b) + " k=" + std::to_string(s.k) +
         " n=3a+b=" + std::to_string(s.n()));
  r.line("  dimW_bound = 12a^2 + 10ab + b^2 + (k-1)n^2 + k = " + std::to_string(rep.dimW_bound));
  r.line("  dim C(A_0) = 3a^2 + 2ab + b^2 = " + std::to_string(rep.dimCA0));
  r.line("  dimV_bound = n^2 - dim C(A_0) + dimW_bound + 2 = " + std::to_string(rep.dimV_bound));
  r.line("  expected_dim = (k+1)(n^2+n) = " + std::to_string(rep.expected_dim));
  r.line("  b^2 + (k+1-2a)b + 3a(k+1) - k - 2 = " + std::to_string(rep.inequality_value) +
         "  discriminant 4a^2 - 16(k+1)a + (k+1)^2 + 4(k+2) = " + std::to_string(rep.delta));
  r.line(std::string("  forces a second component: ") + (rep.reducible ? "yes" : "no"));
}

void print_thresholds(const Report& r, const Thresholds& t) {
  r.line("thresholds k=" + std::to_string(t.k) + ": mu=" + std::to_string(t.mu) + " beta=" + std::to_string(t.beta) +
         " N = 4*beta - floor((k+5)/2) = 4*" + std::to_string(t.beta) + " - " + std::to_string((t.k + 5) / 2) +
         " = " + std::to_string(t.N));
  r.line("  mu   = 2(k+1) + ceil(sqrt(15(k+1)^2 - 4(k+2))/2)");
  r.line("  beta = 2(k+1) + ceil(sqrt(15(k+1)^2 - 4(k+1) + 12)/2)");
}

int red_table(const Globals& g, const RedOptions& o) {
  Report r(g.structured);
  const auto th = thresholds(o.k);
  print_thresholds(r, th);
  r.record("thresholds").kv("k", th.k).kv("mu", th.mu).kv("beta", th.beta).kv("N", th.N);
  const auto rows = reducible_table(o.k, o.n_max);
  std::optional<Int> first;
  bool ok = true;
  r.line("     n     a     b  dimV_bound  expected_dim");
  for (const auto& row : rows) {
    std::ostringstream os;
    os << std::setw(6) << row.n;
    if (row.witness) {
      const auto rep = bounds(*row.witness);
      os << std::setw(6) << row.witness->a << std::setw(6) << row.witness->b << std::setw(12) << rep.dimV_bound
         << std::setw(14) << rep.expected_dim;
      if (!first) first = row.n;
      r.record("table")
          .kv("n", row.n)
          .kv("a", row.witness->a)
          .kv("b", row.witness->b)
          .kv("dimV_bound", rep.dimV_bound)
          .kv("expected_dim", rep.expected_dim);
    } else {
      os << "     -     -";
      r.record("table").kv("n", row.n).kv("a", "none");
      if (row.n >= th.N) ok = false;
    }
    r.line(os.str());
  }
  r.line("first reducible n = " + (first ? std::to_string(*first) : std::string("none")) + " (k=" +
         std::to_string(o.k) + ", n_max=" + std::to_string(o.n_max) + ")");
  r.line("every n in [N, n_max] has a witness: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

int red_bounds(const Globals& g, const RedOptions& o) {
  Report r(g.structured);
  const auto rep = bounds(BlockShape{o.a, o.b, o.k});
  print_bounds(r, rep);
  r.record("bounds")
      .kv("a", o.a)
      .kv("b", o.b)
      .kv("k", o.k)
      .kv("dimW_bound", rep.dimW_bound)
      .kv("dimCA0", rep.dimCA0)
      .kv("dimV_bound", rep.dimV_bound)
      .kv("expected_dim", rep.expected_dim)
      .kv("inequality_value", rep.inequality_value)
      .kv("delta", rep.delta)
      .kv("reducible", rep.reducible);
  return kExitOk;
}

template <ExactField F>
int red_sample(const F& f, const Globals& g, const RedOptions& o) {
  const BlockShape shape{o.a, o.b, o.k};
  Rng rng(g.seed);
  const auto [a, b] = sample_W_point(f, shape, rng);
  const auto values = evaluate(generators(f, a.n(), a.k()), a, b);
  bool vanish = true;
  for (const auto& v : values) vanish = vanish && f.is_zero(v);
  std::cout << "# W point, shape a=" << o.a << " b=" << o.b << " k=" << o.k << "\n";
  std::cout << format_matpoly(a) << format_matpoly(b);
  Report r(g.structured);
  r.line(std::string("# all jet-ideal generators vanish: ") + (vanish ? "yes" : "no"));
  return vanish ? kExitOk : kExitFailed;
}

template <ExactField F>
int red_empirical(const F& f, const Globals& g, const RedOptions& o) {
  const BlockShape shape{o.a, o.b, o.k};
  const auto rep = bounds(shape);
  const Int dim = empirical_dimW(f, shape, o.trials, g.seed);
  const bool ok = dim >= rep.dimW_bound;
  Report r(g.structured);
  r.line("empirical dim W a=" + std::to_string(o.a) + " b=" + std::to_string(o.b) + " k=" + std::to_string(o.k) +
         " trials=" + std::to_string(o.trials) + ": " + std::to_string(dim) +
         " (bound 12a^2 + 10ab + b^2 + (k-1)n^2 + k = " + std::to_string(rep.dimW_bound) + ")");
  r.record("empirical_dimW").kv("a", o.a).kv("b", o.b).kv("k", o.k).kv("dim", dim).kv("bound", rep.dimW_bound);
  r.line("  result: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// irr3

struct Irr3Options {
  std::string input;
  std::string output;
  std::size_t k = 2;
  std::size_t samples = 100;
};

const char* terminal_name(TerminalKind t) {
  switch (t) {
    case TerminalKind::in_U: return "in_U";
    case TerminalKind::spectrum_split: return "spectrum_split";
    case TerminalKind::stalled: return "stalled";
  }
  return "?";
}

template <ExactField F>
int irr3_certify(const F& f, const Globals& g, const Irr3Options& o) {
  Report r(g.structured);
  if (!o.input.empty()) {
    const auto [a, b] = parse_pair(f, read_file(o.input));
    if (a.n() != 3) throw PreconditionError("closure certificates need 3x3 matrices");
    const auto cert = certify_closure(a, b, g.seed);
    const auto rep = replay(cert);
    write_output(o.output, serialize(cert));
    if (!o.output.empty() && o.output != "-") {
      r.line("certificate: " + std::to_string(cert.moves.size()) + " moves, terminal " +
             terminal_name(cert.terminal.kind) + ", replay " + (rep.ok ? "ok" : "FAILED: " + rep.failure));
    }
    return rep.ok ? kExitOk : kExitFailed;
  }

  const Irr3Case kinds[] = {Irr3Case::one_regular, Irr3Case::split_spectrum, Irr3Case::rank_one_nilpotent,
                            Irr3Case::zero_constant};
  struct Outcome {
    Irr3Case kind;
    std::size_t k;
    std::size_t moves;
    TerminalKind terminal;
    ReplayResult replayed;
    bool roundtrip;
  };
  auto results = parallel_map(o.samples, [&](std::size_t i) {
    Rng rng(derive_seed(g.seed, i));
    const auto kind = kinds[i % 4];
    const std::size_t k = 1 + (i / 4) % o.k;
    const auto [a, b] = random_irr3_pair(f, k, kind, rng);
    const auto cert = certify_closure(a, b, derive_seed(g.seed ^ 0x5eedULL, i));
    const auto text = serialize(cert);
    return Outcome{kind, k, cert.moves.size(), cert.terminal.kind, replay(cert),
                   serialize(parse_certificate(f, text)) == text};
  }, g.threads);

  std::size_t in_u = 0, split = 0, stalled = 0, replay_ok = 0, roundtrip_ok = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    in_u += res.terminal == TerminalKind::in_U;
    split += res.terminal == TerminalKind::spectrum_split;
    stalled += res.terminal == TerminalKind::stalled;
    replay_ok += res.replayed.ok;
    roundtrip_ok += res.roundtrip;
    r.record("certificate")
        .kv("index", i)
        .kv("case", irr3_case_name(res.kind))
        .kv("k", res.k)
        .kv("moves", res.moves)
        .kv("terminal", terminal_name(res.terminal))
        .kv("replay_ok", res.replayed.ok)
        .kv("roundtrip_ok", res.roundtrip);
    if (!res.replayed.ok) r.line("  pair " + std::to_string(i) + ": " + res.replayed.failure);
  }
  const std::size_t s = results.size();
  const bool ok = stalled == 0 && replay_ok == s && roundtrip_ok == s;
  r.line("irr3 certify field=" + field_label(f) + " pairs=" + std::to_string(s) + " k=1.." + std::to_string(o.k) +
         " seed=" + std::to_string(g.seed));
  r.line("  terminals: in_U=" + std::to_string(in_u) + " spectrum_split=" + std::to_string(split) +
         " stalled=" + std::to_string(stalled));
  r.line("  replays ok: " + std::to_string(replay_ok) + "/" + std::to_string(s) +
         ", serialization round trips: " + std::to_string(roundtrip_ok) + "/" + std::to_string(s));
  r.line("  result: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

template <ExactField F>
int irr3_replay(const F& f, const Globals& g, const Irr3Options& o) {
  if (o.input.empty()) throw std::invalid_argument("irr3 replay needs --input");
  const auto cert = parse_certificate(f, read_file(o.input));
  const auto rep = replay(cert);
  Report r(g.structured);
  r.line("replay: " + std::to_string(cert.moves.size()) + " moves, terminal " + terminal_name(cert.terminal.kind) +
         ": " + (rep.ok ? "ok" : "FAILED: " + rep.failure));
  r.record("replay").kv("moves", cert.moves.size()).kv("terminal", terminal_name(cert.terminal.kind)).kv("ok", rep.ok);
  return rep.ok ? kExitOk : kExitFailed;
}

// ---------------------------------------------------------------------------
// algdim

struct AlgdimOptions {
  std::string input;
  std::size_t n = 3;
  std::size_t k = 2;
  std::size_t samples = 50;
};

template <ExactField F>
int run_algdim(const F& f, const Globals& g, const AlgdimOptions& o) {
  Report r(g.structured);
  if (!o.input.empty()) {
    const auto [a, b] = parse_pair(f, read_file(o.input));
    if (!commutator(a, b).is_zero()) throw PreconditionError("algdim: input pair does not commute");
    const auto dim = triple_algebra_dim(a, b);
    const auto filt = filtration_dims(f, a.n(), a.k(), {a, b});
    const auto dim0 = algebra_dim(f, a.n(), {a.coeff(0), b.coeff(0)});
    r.line("algdim n=" + std::to_string(a.n()) + " k=" + std::to_string(a.k()) + ": dim F[A_0,B_0]=" +
           std::to_string(dim0) + " dim F[A,B,t]=" + std::to_string(dim) + " filtration=[" + join(filt) + "]" +
           " n(k+1)=" + std::to_string(a.n() * (a.k() + 1)));
    r.record("algdim").kv("dim0", dim0).kv("dim", dim).kv("filtration", join(filt));
    return kExitOk;
  }
  struct Outcome {
    std::size_t dim0, dim;
    std::vector<std::size_t> filt;
  };
  auto results = parallel_map(o.samples, [&](std::size_t i) {
    Rng rng(derive_seed(g.seed, i));
    const auto [a, b] = random_u_pair(f, o.n, o.k, rng);
    return Outcome{algebra_dim(f, o.n, {a.coeff(0), b.coeff(0)}), triple_algebra_dim(a, b),
                   filtration_dims(f, o.n, o.k, {a, b})};
  }, g.threads);
  const std::size_t full = o.n * (o.k + 1);
  const std::vector<std::size_t> flat(o.k + 1, o.n);
  std::size_t good = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& res = results[i];
    const bool ok = res.dim0 == o.n && res.dim == full && res.filt == flat;
    good += ok;
    r.record("algdim").kv("index", i).kv("dim0", res.dim0).kv("dim", res.dim).kv("filtration", join(res.filt));
  }
  const bool ok = good == results.size();
  r.line("algdim field=" + field_label(f) + " n=" + std::to_string(o.n) + " k=" + std::to_string(o.k) +
         " samples=" + std::to_string(o.samples) + " seed=" + std::to_string(g.seed));
  r.line("  pairs with dim F[A_0,B_0] = n, dim F[A,B,t] = n(k+1) = " + std::to_string(full) +
         " and filtration [n,...,n]: " + std::to_string(good) + "/" + std::to_string(results.size()));
  r.line("  result: " + pass_fail(ok));
  return ok ? kExitOk : kExitFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on jets of commuting matrix pairs"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field", g.field, "prime modulus, or Q for the rationals")->capture_default_str();
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for sweeps (0 = all cores)")->capture_default_str();
  app.add_flag("--structured", g.structured, "also emit 'record' lines");

  auto add_nk = [](CLI::App* c, std::size_t& n, std::size_t& k) {
    c->add_option("--n", n, "matrix size")->capture_default_str()->check(CLI::PositiveNumber);
    c->add_option("--k", k, "jet order")->capture_default_str();
  };

  auto* verify = app.add_subcommand("verify", "randomized identity sweeps");
  verify->require_subcommand(1);
  SweepOptions thm24_opts;
  auto* thm24 = verify->add_subcommand("thm24", "equivalent characterizations of a 1-regular constant term");
  add_nk(thm24, thm24_opts.n, thm24_opts.k);
  thm24->add_option("--samples", thm24_opts.samples)->capture_default_str();
  SweepOptions lemma_opts;
  auto* lemma23 = verify->add_subcommand("lemma23", "closed-form commutant element vs direct evaluation");
  add_nk(lemma23, lemma_opts.n, lemma_opts.k);
  lemma23->add_option("--samples", lemma_opts.samples)->capture_default_str();

  CommutantOptions comm_opts;
  auto* comm = app.add_subcommand("commutant", "commutant basis and dimension");
  comm->add_option("--input", comm_opts.input, "matpoly file (random A if omitted)");
  comm->add_option("--kind", comm_opts.kind, "random A_0: one-regular, non-regular or any")->capture_default_str();
  add_nk(comm, comm_opts.n, comm_opts.k);
  comm->add_flag("--basis", comm_opts.basis, "print the basis");

  LiftOptions lift_opts;
  auto* lift = app.add_subcommand("lift", "extend commuting pairs by one order");
  lift->add_option("--input", lift_opts.input, "pair file");
  lift->add_option("--next", lift_opts.next, "matpoly file with the new A coefficient (order 0)");
  lift->add_option("--demo", lift_opts.demo, "remark28: the obstructed n=2 example");
  add_nk(lift, lift_opts.n, lift_opts.k);
  lift->add_option("--samples", lift_opts.samples)->capture_default_str();

  auto* jet = app.add_subcommand("jetideal", "jet ideal generators");
  jet->require_subcommand(1);
  JetOptions jet_opts;
  auto* jet_export_cmd = jet->add_subcommand("export", "write the generators");
  add_nk(jet_export_cmd, jet_opts.n, jet_opts.k);
  jet_export_cmd->add_option("--format", jet_opts.format, "generic, m2 or singular")->capture_default_str();
  jet_export_cmd->add_option("--output", jet_opts.output, "output file (stdout if omitted)");
  auto* jet_tangent_cmd = jet->add_subcommand("tangent", "tangent space dimension via the Jacobian");
  add_nk(jet_tangent_cmd, jet_opts.n, jet_opts.k);
  jet_tangent_cmd->add_option("--input", jet_opts.input, "pair file (random points with 1-regular A_0 if omitted)");
  jet_tangent_cmd->add_option("--samples", jet_opts.samples)->capture_default_str();

  auto* red = app.add_subcommand("red", "reducibility witness arithmetic");
  red->require_subcommand(1);
  RedOptions red_opts;
  auto* red_table_cmd = red->add_subcommand("table", "smallest witness shape for each n");
  red_table_cmd->add_option("--k", red_opts.k)->capture_default_str();
  red_table_cmd->add_option("--n-max", red_opts.n_max)->capture_default_str();
  auto add_shape = [&](CLI::App* c) {
    c->add_option("--a", red_opts.a)->capture_default_str();
    c->add_option("--b", red_opts.b)->capture_default_str();
    c->add_option("--k", red_opts.k)->capture_default_str();
  };
  auto* red_bounds_cmd = red->add_subcommand("bounds", "dimension bounds for one block shape");
  add_shape(red_bounds_cmd);
  auto* red_sample_cmd = red->add_subcommand("sample", "print a random point of the witness family");
  add_shape(red_sample_cmd);
  auto* red_emp_cmd = red->add_subcommand("empirical-dim", "sampled dimension of the witness family");
  add_shape(red_emp_cmd);
  red_emp_cmd->add_option("--trials", red_opts.trials)->capture_default_str();

  auto* irr3 = app.add_subcommand("irr3", "closure certificates for 3x3 commuting jet pairs");
  irr3->require_subcommand(1);
  Irr3Options irr3_opts;
  auto* certify = irr3->add_subcommand("certify", "certify one pair (--input) or a random batch");
  certify->add_option("--input", irr3_opts.input, "pair file");
  certify->add_option("--output", irr3_opts.output, "certificate file (stdout if omitted)");
  certify->add_option("--k", irr3_opts.k, "batch: largest jet order")->capture_default_str()->check(
      CLI::PositiveNumber);
  certify->add_option("--samples", irr3_opts.samples)->capture_default_str();
  auto* replay_cmd = irr3->add_subcommand("replay", "check a serialized certificate");
  replay_cmd->add_option("--input", irr3_opts.input, "certificate file")->required();

  AlgdimOptions alg_opts;
  auto* algdim = app.add_subcommand("algdim", "dimension of F[A,B,t] and its t-adic filtration");
  algdim->add_option("--input", alg_opts.input, "pair file (random sweep if omitted)");
  add_nk(algdim, alg_opts.n, alg_opts.k);
  algdim->add_option("--samples", alg_opts.samples)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    const auto spec = FieldSpec::parse(g.field);
    return with_field(spec, [&](const auto& f) -> int {
      if (thm24->parsed()) return verify_thm24(f, g, thm24_opts);
      if (lemma23->parsed()) return verify_lemma23(f, g, lemma_opts);
      if (comm->parsed()) return run_commutant(f, g, comm_opts);
      if (lift->parsed()) return run_lift(f, g, lift_opts);
      if (jet_export_cmd->parsed()) return jet_export(f, g, jet_opts);
      if (jet_tangent_cmd->parsed()) return jet_tangent(f, g, jet_opts);
      if (red_table_cmd->parsed()) return red_table(g, red_opts);
      if (red_bounds_cmd->parsed()) return red_bounds(g, red_opts);
      if (red_sample_cmd->parsed()) return red_sample(f, g, red_opts);
      if (red_emp_cmd->parsed()) return red_empirical(f, g, red_opts);
      if (certify->parsed()) return irr3_certify(f, g, irr3_opts);
      if (replay_cmd->parsed()) return irr3_replay(f, g, irr3_opts);
      if (algdim->parsed()) return run_algdim(f, g, alg_opts);
      return kExitBadInput;
    });
  } catch (const PreconditionError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const NotInCommutantError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const ParseError& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "property failed: " << e.what() << "\n";
    return kExitFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailed;
  }
}
