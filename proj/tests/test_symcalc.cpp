#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"

using namespace jetcomm;

namespace {

const PrimeField kF(32003);
const PrimeField kSmall(101);
using MP = MatPoly<PrimeField>;
using M = Matrix<PrimeField>;
using Poly = UniPoly<PrimeField>;

std::size_t factorial(std::size_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

TEST(SymSum, Examples) {
  Rng rng(1);
  const auto x = M::random(kF, 3, 3, rng);
  const auto y = M::random(kF, 3, 3, rng);
  EXPECT_EQ(sym_sum<PrimeField>({x, 2, {y}}), x * x * y + x * y * x + y * x * x);
  EXPECT_TRUE(sym_sum<PrimeField>({x, -1, {y}}).is_zero());
  EXPECT_EQ(sym_sum<PrimeField>({x, 0, {y}}), y);
  EXPECT_EQ(sym_sum<PrimeField>({x, 2, {}}), x * x);
}

TEST(SymSum, MatchesWordEnumeration) {
  Rng rng(2);
  for (std::size_t d = 0; d <= 3; ++d) {
    for (std::size_t t = 1; t <= 3; ++t) {
      const auto x = M::random(kSmall, 2, 2, rng);
      std::vector<M> ys;
      for (std::size_t i = 0; i < t; ++i) ys.push_back(M::random(kSmall, 2, 2, rng));
      EXPECT_EQ(sym_sum<PrimeField>({x, static_cast<long>(d), ys}), oracle::symmetric_word_sum(x, d, ys));
    }
  }
}

TEST(SymSum, InvariantUnderPermutationOfYs) {
  Rng rng(3);
  const auto x = M::random(kF, 3, 3, rng);
  std::vector<M> ys{M::random(kF, 3, 3, rng), M::random(kF, 3, 3, rng), M::random(kF, 3, 3, rng)};
  ys.push_back(ys[0]);  // a repeated variable
  const auto base = sym_sum<PrimeField>({x, 2, ys});
  std::vector<std::size_t> order{0, 1, 2, 3};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<M> shuffled;
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    for (auto i : order) shuffled.push_back(ys[i]);
    EXPECT_EQ(sym_sum<PrimeField>({x, 2, shuffled}), base);
  }
}

TEST(SymSum, ArrangementCountIsMultinomial) {
  // x^3 y1^2 y2: 6! / (3! 2! 1!) = 60
  std::size_t visited = 0;
  const auto count = for_each_arrangement({kSymX, kSymX, kSymX, 0, 0, 1}, [&](const auto&) { ++visited; });
  EXPECT_EQ(count, 60u);
  EXPECT_EQ(visited, factorial(6) / (factorial(3) * factorial(2)));
}

TEST(DOp, Examples) {
  Rng rng(4);
  const auto x = M::random(kF, 3, 3, rng);
  const auto y = M::random(kF, 3, 3, rng);
  EXPECT_EQ(d_op(Poly::from_ints(kF, {0, 0, 1}), {y}, x), x * y + y * x);
  EXPECT_TRUE(d_op(Poly::from_ints(kF, {5}), {y}, x).is_zero());
}

TEST(DOp, CubicBilinearPartMatchesEnumeration) {
  Rng rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto x = M::random(kSmall, 3, 3, rng);
    const auto y = M::random(kSmall, 3, 3, rng);
    const auto z = M::random(kSmall, 3, 3, rng);
    // bilinear part of (x + eY + fZ)^3 with e^2 = f^2 = 0
    EXPECT_EQ(d_op(Poly::from_ints(kSmall, {0, 0, 0, 1}), {y, z}, x), oracle::symmetric_word_sum(x, 1, {y, z}));
    const auto q = Poly::random(kSmall, 4, rng);
    M expected(kSmall, 3, 3);
    for (std::size_t j = 2; j <= 4; ++j) expected += oracle::symmetric_word_sum(x, j - 2, {y, z}).scaled(q.coeff(j));
    EXPECT_EQ(d_op(q, {y, z}, x), expected);
  }
}

TEST(GCoeff, Examples) {
  Rng rng(6);
  const auto a = MP::random(kF, 2, 2, rng);
  const auto coeffs = a.coeffs();
  EXPECT_EQ(g_coeff<PrimeField>(3, 0, coeffs), power(a.coeff(0), 3));
  EXPECT_EQ(g_coeff<PrimeField>(1, 2, coeffs), a.coeff(2));
}

TEST(GCoeff, SumsToTruncatedPower) {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = MP::random(kF, 2, 2, rng);
    const auto cube = oracle::mul(a, oracle::mul(a, a));
    for (std::size_t l = 0; l <= 2; ++l) EXPECT_EQ(g_coeff<PrimeField>(3, l, a.coeffs()), cube.coeff(l));
  }
}

TEST(BFromQ, Examples) {
  Rng rng(8);
  const auto a = MP::random(kF, 3, 2, rng);
  std::vector<Poly> qs(3, Poly(kF));
  EXPECT_TRUE(b_from_q(qs, a).is_zero());
  qs[0] = Poly::x(kF);
  EXPECT_EQ(b_from_q(qs, a), a);
}

TEST(BFromQ, MatchesDirectEvaluation) {
  Rng rng(9);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 0; k <= 3; ++k) {
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = MP::random(kF, n, k, rng);
        const auto qs = random_qs(kF, n, k, rng);
        MP direct(kF, n, k);
        auto t_power = MP::identity(kF, n, k);
        for (std::size_t j = 0; j <= k; ++j) {
          // q_j(A) by explicit Horner with the convolution oracle
          MP qa(kF, n, k);
          for (long d = qs[j].degree(); d >= 0; --d) {
            qa = oracle::mul(qa, a) + MP::identity(kF, n, k).scaled(qs[j].coeff(static_cast<std::size_t>(d)));
          }
          direct += oracle::mul(t_power, qa);
          t_power = t_power.shifted_up(1);
        }
        EXPECT_EQ(b_from_q(qs, a), direct) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(QFromB, Examples) {
  Rng rng(10);
  const auto a = random_with_constant(random_one_regular(kF, 3, rng), 2, rng);
  const auto qs = q_from_b(a, MP::identity(kF, 3, 2));
  ASSERT_EQ(qs.size(), 3u);
  EXPECT_EQ(qs[0], Poly::from_ints(kF, {1}));
  EXPECT_TRUE(qs[1].is_zero());
  EXPECT_TRUE(qs[2].is_zero());
}

TEST(QFromB, RoundTrip) {
  Rng rng(11);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 0; k <= 3; ++k) {
      const auto a = random_with_constant(random_one_regular(kF, n, rng), k, rng);
      const auto qs = random_qs(kF, n, k, rng);
      EXPECT_EQ(q_from_b(a, b_from_q(qs, a)), qs);
    }
  }
}

TEST(QFromB, ReportsFirstFailingStage) {
  Rng rng(12);
  const auto a = random_with_constant(random_one_regular(kF, 3, rng), 2, rng);
  auto b = b_from_q(random_qs(kF, 3, 2, rng), a);
  b.coeff(1)(0, 2) = kF.add(b.coeff(1)(0, 2), 1);
  try {
    (void)q_from_b(a, b);
    FAIL() << "expected NotInCommutantError";
  } catch (const NotInCommutantError& e) {
    EXPECT_EQ(e.stage(), 1u);
  }
  EXPECT_THROW((void)q_from_b(MP(kF, 3, 2), b), PreconditionError);
}
