#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace jetcomm;

namespace {

const PrimeField kF(32003);

// Exhaustive search over every decomposition n = 3a + b with a >= 1, b >= 0,
// testing the quadratic directly.
bool witness_exists(Int k, Int n) {
  for (Int a = 1; 3 * a <= n; ++a) {
    const Int b = n - 3 * a;
    if (b * b + (k + 1 - 2 * a) * b + 3 * a * (k + 1) - k - 2 <= 0) return true;
  }
  return false;
}

}  // namespace

TEST(IntegerRoots, FloorAndCeil) {
  for (Int v = 0; v < 2000; ++v) {
    const Int f = isqrt_floor(v);
    EXPECT_LE(f * f, v);
    EXPECT_GT((f + 1) * (f + 1), v);
    const Int c = isqrt_ceil(v);
    EXPECT_GE(c * c, v);
    if (c > 0) {
      EXPECT_LT((c - 1) * (c - 1), v);
    }
  }
  EXPECT_EQ(floor_div(-7, 2), -4);
  EXPECT_EQ(ceil_div(-7, 2), -3);
  EXPECT_EQ(ceil_div(7, 2), 4);
}

TEST(Bounds, Examples) {
  const auto r = bounds({8, 5, 1});
  EXPECT_EQ(r.inequality_value, 0);
  EXPECT_TRUE(r.reducible);
  EXPECT_EQ(r.dimV_bound, 1740);
  EXPECT_EQ(r.expected_dim, 1740);

  const auto small = bounds({1, 0, 1});
  EXPECT_EQ(small.dimW_bound, 13);
  EXPECT_FALSE(small.reducible);
  // 0 + 0 + 3*1*2 - 1 - 2
  EXPECT_EQ(small.inequality_value, 3);

  const auto edge = bounds({8, 4, 1});
  EXPECT_EQ(edge.inequality_value, 5);
  EXPECT_FALSE(edge.reducible);

  EXPECT_THROW((void)bounds({0, 1, 1}), PreconditionError);
}

TEST(Bounds, InequalityIsTheDimensionGap) {
  for (Int k = 1; k <= 6; ++k) {
    for (Int a = 1; a <= 40; ++a) {
      for (Int b = 0; b <= 40; ++b) {
        const auto r = bounds({a, b, k});
        EXPECT_EQ(r.expected_dim - r.dimV_bound, r.inequality_value);
        EXPECT_EQ(r.reducible, r.dimV_bound >= r.expected_dim);
      }
    }
  }
}

TEST(Thresholds, Examples) {
  const auto t1 = thresholds(1);
  EXPECT_EQ(t1.mu, 8);
  EXPECT_EQ(t1.beta, 8);
  EXPECT_EQ(t1.N, 29);
  const auto t2 = thresholds(2);
  EXPECT_EQ(t2.beta, 12);
  EXPECT_EQ(t2.N, 45);
  EXPECT_EQ(delta_k(1, 8), 16);
  EXPECT_EQ(b_interval(1, 8), std::make_pair(Int{5}, Int{9}));
  EXPECT_THROW((void)thresholds(0), PreconditionError);
}

TEST(Thresholds, MonotoneInK) {
  for (Int k = 2; k <= 10; ++k) {
    EXPECT_LE(thresholds(k - 1).N, thresholds(k).N);
    EXPECT_LE(thresholds(k).mu, thresholds(k).beta);
  }
}

TEST(BInterval, MatchesScan) {
  for (Int k = 1; k <= 8; ++k) {
    for (Int a = 1; a <= 80; ++a) {
      Int lo = -1, hi = -1;
      for (Int b = 0; b <= 4 * a + 10; ++b) {
        if (inequality_value(k, a, b) <= 0) {
          if (lo < 0) lo = b;
          hi = b;
        }
      }
      const auto iv = b_interval(k, a);
      if (lo < 0) {
        EXPECT_FALSE(iv.has_value()) << "k=" << k << " a=" << a;
      } else {
        ASSERT_TRUE(iv.has_value()) << "k=" << k << " a=" << a;
        EXPECT_EQ(iv->first, lo);
        EXPECT_EQ(iv->second, hi);
      }
    }
  }
}

TEST(ReducibleTable, Examples) {
  const auto rows = reducible_table(1, 60);
  ASSERT_EQ(rows.size(), 60u);
  ASSERT_TRUE(rows[28].witness.has_value());
  EXPECT_EQ(rows[28].witness->a, 8);
  EXPECT_EQ(rows[28].witness->b, 5);
  EXPECT_FALSE(rows[27].witness.has_value());
  for (Int n = 1; n < 29; ++n) EXPECT_FALSE(rows[static_cast<std::size_t>(n - 1)].witness.has_value());
  EXPECT_TRUE(reducible_table(2, 44)[43].witness.has_value());
}

TEST(ReducibleTable, AgreesWithExhaustiveSearchAndHasNoGapsAboveN) {
  for (Int k = 1; k <= 10; ++k) {
    const auto th = thresholds(k);
    const auto rows = reducible_table(k, 3 * th.N);
    for (const auto& row : rows) {
      EXPECT_EQ(row.witness.has_value(), witness_exists(k, row.n)) << "k=" << k << " n=" << row.n;
      if (row.n >= th.N) {
        EXPECT_TRUE(row.witness.has_value()) << "k=" << k << " n=" << row.n;
      }
      if (row.witness) {
        EXPECT_EQ(row.witness->n(), row.n);
        EXPECT_TRUE(bounds(*row.witness).reducible);
      }
    }
  }
}

TEST(SampleW, PointsCommuteLieOnSchemeAndAreNotInU) {
  Rng rng(1);
  for (const BlockShape shape : {BlockShape{1, 0, 1}, BlockShape{1, 1, 1}, BlockShape{1, 0, 2}, BlockShape{2, 1, 1}}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto [a, b] = sample_W_point(kF, shape, rng);
      EXPECT_TRUE(commutator(a, b).is_zero());
      for (const auto& v : evaluate(generators(kF, a.n(), a.k()), a, b)) EXPECT_TRUE(kF.is_zero(v));
      EXPECT_EQ(a.coeff(0), w_constant_a(kF, shape));
      if (shape.n() > 3) {
        EXPECT_FALSE(is_one_regular(a.coeff(0)));
      }
    }
  }
}

TEST(SampleW, DegenerateShapeConstantTerm) {
  const auto a0 = w_constant_a(kF, {1, 0, 1});
  Matrix<PrimeField> expected(kF, 3, 3);
  expected(0, 1) = kF.one();
  expected(1, 2) = kF.one();
  EXPECT_EQ(a0, expected);
}

TEST(EmpiricalDimW, MeetsBound) {
  EXPECT_EQ(empirical_dimW(kF, {1, 0, 1}, 50, 0), 13);
  for (const BlockShape shape : {BlockShape{1, 1, 1}, BlockShape{1, 0, 2}, BlockShape{2, 0, 1}}) {
    EXPECT_GE(empirical_dimW(kF, shape, 50, 0), bounds(shape).dimW_bound);
  }
  EXPECT_EQ(bounds({1, 1, 1}).dimW_bound, 24);
  EXPECT_EQ(bounds({1, 0, 2}).dimW_bound, 23);
}

TEST(EmpiricalDimW, DeterministicForSeed) {
  EXPECT_EQ(empirical_dimW(kF, {1, 1, 1}, 10, 7), empirical_dimW(kF, {1, 1, 1}, 10, 7));
}
