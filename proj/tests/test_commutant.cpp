#include <gtest/gtest.h>

#include <numeric>

#include "oracles.hpp"

using namespace jetcomm;

namespace {

const PrimeField kF(32003);
using MP = MatPoly<PrimeField>;
using M = Matrix<PrimeField>;

// dim of {B : [A, B] = 0}, from the operator matrix built by applying the commutator.
std::size_t commutant_dim_oracle(const MP& a) {
  const auto op = oracle::operator_matrix<PrimeField>(kF, a.n(), a.k(), [&](const MP& b) { return oracle::mul(a, b) - oracle::mul(b, a); });
  return op.cols() - oracle::rank(op);
}

}  // namespace

TEST(CommutatorOperator, MatchesAppliedCommutator) {
  Rng rng(1);
  for (std::size_t n = 1; n <= 3; ++n) {
    for (std::size_t k = 0; k <= 2; ++k) {
      const auto a = MP::random(kF, n, k, rng);
      const auto op =
          oracle::operator_matrix<PrimeField>(kF, n, k, [&](const MP& b) { return oracle::mul(a, b) - oracle::mul(b, a); });
      EXPECT_EQ(commutator_operator(a), op);
    }
  }
}

TEST(CommutantBasis, Examples) {
  EXPECT_EQ(commutant_basis(MP(kF, 3, 2)).dim(), 27u);

  auto diag = MP(kF, 3, 1);
  diag.coeff(0) = diagonal(kF, {kF.from_int(1), kF.from_int(2), kF.from_int(3)});
  const auto basis = commutant_basis(diag);
  EXPECT_EQ(basis.dim(), 6u);
  for (const auto& v : basis.vectors()) {
    const auto b = unflatten(kF, 3, 1, v);
    for (std::size_t s = 0; s <= 1; ++s) {
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          if (i != j) {
            EXPECT_TRUE(kF.is_zero(b.coeff(s)(i, j)));
          }
        }
      }
    }
  }
}

TEST(CommutantBasis, OneRegularGivesFullPowerSpan) {
  Rng rng(2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_with_constant(random_one_regular(kF, 4, rng), 3, rng);
    const auto basis = commutant_basis(a);
    EXPECT_EQ(basis.dim(), 16u);
    EXPECT_EQ(basis, power_span(a));
    EXPECT_EQ(basis.dim(), commutant_dim_oracle(a));
  }
}

TEST(CommutantBasis, VectorsCommuteAndDimensionIsAtLeastNKPlusOne) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t k = static_cast<std::size_t>(trial % 4);
    const auto a0 = trial % 2 ? random_non_one_regular(kF, n, rng) : M::random(kF, n, n, rng);
    const auto a = random_with_constant(a0, k, rng);
    const auto basis = commutant_basis(a);
    EXPECT_GE(basis.dim(), n * (k + 1));
    EXPECT_EQ(basis.dim(), commutant_dim_oracle(a));
    for (const auto& v : basis.vectors()) EXPECT_TRUE(commutator(a, unflatten(kF, n, k, v)).is_zero());
  }
}

TEST(IsOneRegular, Examples) {
  EXPECT_TRUE(is_one_regular(jordan_block(kF, 4)));
  EXPECT_FALSE(is_one_regular(M::unit(kF, 3, 0, 1)));
  EXPECT_FALSE(is_one_regular(diagonal(kF, {kF.from_int(1), kF.from_int(1), kF.from_int(2)})));
  EXPECT_TRUE(is_one_regular(diagonal(kF, {kF.from_int(1), kF.from_int(2), kF.from_int(3)})));
}

TEST(PowerSpan, Examples) {
  EXPECT_EQ(power_span(MP(kF, 3, 2)).dim(), 3u);
  Rng rng(4);
  EXPECT_EQ(power_span(random_with_constant(random_one_regular(kF, 3, rng), 2, rng)).dim(), 9u);
  MP e(kF, 3, 2);
  e.coeff(0) = M::unit(kF, 3, 0, 1);
  EXPECT_LT(power_span(e).dim(), 9u);
}

TEST(AlgebraDim, Examples) {
  EXPECT_EQ(algebra_dim(kF, 3, {}), 1u);
  EXPECT_EQ(algebra_dim(std::vector<M>{jordan_block(kF, 3)}), 3u);
  EXPECT_THROW((void)algebra_dim(std::vector<M>{}), std::invalid_argument);
  Rng rng(5);
  const auto a = random_with_constant(random_one_regular(kF, 3, rng), 1, rng);
  EXPECT_EQ(algebra_dim(std::vector<M>{embed_toeplitz(a), embed_toeplitz(MP::t(kF, 3, 1))}), 6u);
}

TEST(Thm24Battery, OneRegularAllTrue) {
  Rng rng(6);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (std::size_t k = 0; k <= 3; ++k) {
      const auto rep = thm24_battery(random_with_constant(random_one_regular(kF, n, rng), k, rng));
      EXPECT_TRUE(rep.one_regular);
      EXPECT_TRUE(rep.powers_independent);
      EXPECT_TRUE(rep.full_dim_FAt());
      EXPECT_TRUE(rep.commutant_equals_power_span);
      EXPECT_TRUE(rep.q_param_roundtrip_ok);
      EXPECT_EQ(rep.commutant_dim, n * (k + 1));
    }
  }
}

TEST(Thm24Battery, DegenerateConstantTermsAllFalse) {
  Rng rng(7);
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 0; k <= 3; ++k) {
      const auto rep = thm24_battery(random_with_constant(M(kF, n, n), k, rng));
      EXPECT_FALSE(rep.one_regular);
      EXPECT_FALSE(rep.powers_independent);
      EXPECT_FALSE(rep.full_dim_FAt());
      EXPECT_FALSE(rep.commutant_equals_power_span);
      EXPECT_FALSE(rep.q_param_roundtrip_ok);
    }
    // A = t I: everything commutes with it
    const auto rep = thm24_battery(MP::t(kF, n, 2));
    EXPECT_FALSE(rep.one_regular);
    EXPECT_EQ(rep.commutant_dim, n * n * 3);
  }
}

TEST(Thm24Battery, MixedSweepAgrees) {
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 3);
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    const auto a0 = trial % 2 ? random_non_one_regular(kF, n, rng) : random_one_regular(kF, n, rng);
    EXPECT_NO_THROW((void)thm24_battery(random_with_constant(a0, k, rng)));
  }
}

TEST(AdImage, Examples) {
  Rng rng(9);
  const auto a0 = M::random(kF, 3, 3, rng);
  EXPECT_TRUE(ad_image_contains(a0, M(kF, 3, 3)));
  EXPECT_FALSE(ad_image_contains(M(kF, 3, 3), M::unit(kF, 3, 0, 0)));
  // identity is never a commutator (trace 3 != 0)
  EXPECT_FALSE(ad_image_contains(a0, M::identity(kF, 3)));
}

TEST(AdImage, CrossCommutatorSumLiesInImage) {
  Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [a, b] = random_u_pair(kF, 3, 1 + static_cast<std::size_t>(trial % 3), rng);
    EXPECT_TRUE(ad_image_contains(a.coeff(0), cross_commutator_sum(a, b)));
  }
}

TEST(LiftPair, Examples) {
  Rng rng(11);
  const auto a0 = random_one_regular(kF, 3, rng);
  const auto b0 = a0 * a0;
  const auto b_next = lift_pair(MP::constant(a0, 1), MP::constant(b0, 1), M(kF, 3, 3));
  ASSERT_TRUE(b_next.has_value());
  EXPECT_TRUE(commutator(a0, *b_next).is_zero());

  MP x(kF, 2, 1), y(kF, 2, 1);
  x.coeff(1) = M::unit(kF, 2, 0, 1);
  y.coeff(1) = M::unit(kF, 2, 1, 0);
  for (int trial = 0; trial < 5; ++trial) EXPECT_FALSE(lift_pair(x, y, M::random(kF, 2, 2, rng)).has_value());

  EXPECT_THROW((void)lift_pair(MP::random(kF, 2, 1, rng), MP::random(kF, 2, 1, rng), M(kF, 2, 2)), PreconditionError);
}

TEST(LiftPair, LiftCommutesAndTruncatesBack) {
  Rng rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const auto [a, b] = random_u_pair(kF, 3, 2, rng);
    const auto next = M::random(kF, 3, 3, rng);
    const auto b_next = lift_pair(a, b, next);
    ASSERT_TRUE(b_next.has_value());
    const auto [a2, b2] = extend_pair(a, b, next, *b_next);
    EXPECT_TRUE((oracle::mul(a2, b2) - oracle::mul(b2, a2)).is_zero());
    EXPECT_EQ(a2.truncate(2), a);
    EXPECT_EQ(b2.truncate(2), b);
  }
}

TEST(FiltrationDims, Examples) {
  EXPECT_EQ(filtration_dims<PrimeField>(kF, 3, 2, {}), (std::vector<std::size_t>{1, 1, 1}));
  Rng rng(13);
  const auto a = random_with_constant(random_one_regular(kF, 3, rng), 2, rng);
  EXPECT_EQ(filtration_dims<PrimeField>(kF, 3, 2, {a}), (std::vector<std::size_t>{3, 3, 3}));
  const auto [a2, b2] = random_u_pair(kF, 3, 2, rng);
  EXPECT_EQ(filtration_dims<PrimeField>(kF, 3, 2, {a2, b2}), (std::vector<std::size_t>{3, 3, 3}));
}

TEST(FiltrationDims, NonDecreasingAndSumsToAlgebraDim) {
  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(trial % 3);
    const auto a = random_with_constant(trial % 2 ? random_non_one_regular(kF, 3, rng) : M(kF, 3, 3), k, rng);
    const auto b = random_commuting(a, rng);
    const auto dims = filtration_dims<PrimeField>(kF, 3, k, {a, b});
    for (std::size_t i = 1; i < dims.size(); ++i) EXPECT_LE(dims[i - 1], dims[i]);
    EXPECT_EQ(std::accumulate(dims.begin(), dims.end(), std::size_t{0}), triple_algebra_dim(a, b));
  }
}

TEST(TripleAlgebraDim, OneRegularPairs) {
  Rng rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [a, b] = random_u_pair(kF, 3, 2, rng);
    EXPECT_EQ(triple_algebra_dim(a, b), 9u);
  }
}
