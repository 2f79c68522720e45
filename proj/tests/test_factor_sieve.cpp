#include "prodset/factor_sieve.hpp"

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "prodset/errors.hpp"

using namespace prodset;

TEST(FactorSieve, SmallTable) {
  const auto sieve = FactorSieve::build(10);
  const std::uint64_t expected[] = {0, 0, 2, 3, 2, 5, 2, 7, 2, 3, 2};
  for (std::uint64_t n = 2; n <= 10; ++n) EXPECT_EQ(sieve.smallest_prime_factor(n), expected[n]) << n;
  EXPECT_EQ(FactorSieve::build(2).smallest_prime_factor(2), 2u);
}

TEST(FactorSieve, PrimeCountUpTo100) {
  const auto sieve = FactorSieve::build(100);
  int fixed = 0;
  int brute = 0;
  for (std::uint64_t n = 2; n <= 100; ++n) {
    fixed += sieve.smallest_prime_factor(n) == n ? 1 : 0;
    brute += oracle::is_prime(n) ? 1 : 0;
  }
  EXPECT_EQ(brute, 25);
  EXPECT_EQ(fixed, brute);
}

TEST(FactorSieve, SpfInvariants) {
  const auto sieve = FactorSieve::build(100000);
  for (std::uint64_t n = 2; n <= 100000; ++n) {
    const auto p = sieve.smallest_prime_factor(n);
    ASSERT_EQ(p == n, oracle::is_prime(n)) << n;
    if (p != n) ASSERT_LE(p * p, n) << n;
  }
}

TEST(FactorSieve, Errors) {
  EXPECT_THROW(FactorSieve::build(1), DomainError);
  EXPECT_THROW(FactorSieve::build(1000, MemoryBudget{100}), CapacityError);
  const auto sieve = FactorSieve::build(50);
  EXPECT_THROW(sieve.factorize(51), RangeError);
  EXPECT_THROW(sieve.factorize(0), RangeError);
  EXPECT_THROW(sieve.smallest_prime_factor(1), RangeError);
}

TEST(Factorize, Examples) {
  const auto sieve = FactorSieve::build(1000);
  const auto twelve = sieve.factorize(12);
  ASSERT_EQ(twelve.omega(), 2);
  EXPECT_EQ(twelve.factors()[0], (PrimePower{2, 2}));
  EXPECT_EQ(twelve.factors()[1], (PrimePower{3, 1}));
  EXPECT_TRUE(sieve.factorize(1).factors().empty());
  const auto p = sieve.factorize(97);
  ASSERT_EQ(p.omega(), 1);
  EXPECT_EQ(p.factors()[0], (PrimePower{97, 1}));
}

TEST(Factorize, Statistics) {
  const auto sieve = FactorSieve::build(100);
  const auto s = sieve.factorize(60);
  EXPECT_EQ(s.omega_upto(3), 2);
  EXPECT_EQ(s.big_omega_upto(3), 3);
  EXPECT_EQ(s.omega_upto(1), 0);
  EXPECT_EQ(s.big_omega_upto(1), 0);
  EXPECT_EQ(s.jth_prime_factor(3), 5u);
  EXPECT_FALSE(s.is_squarefree());
  EXPECT_THROW(s.jth_prime_factor(4), RangeError);
  EXPECT_THROW(s.jth_prime_factor(0), RangeError);
  EXPECT_EQ(s.omega(), 3);
  EXPECT_EQ(s.big_omega(), 4);
}

TEST(Factorize, AgreesWithTrialDivision) {
  const auto sieve = FactorSieve::build(100000);
  for (std::uint64_t n = 1; n <= 100000; ++n) {
    const auto sig = sieve.factorize(n);
    const auto ref = oracle::factor(n);
    ASSERT_EQ(static_cast<std::size_t>(sig.omega()), ref.size()) << n;
    for (std::size_t i = 0; i < ref.size(); ++i) {
      ASSERT_EQ(sig.factors()[i].prime, ref[i].first) << n;
      ASSERT_EQ(static_cast<int>(sig.factors()[i].exponent), ref[i].second) << n;
    }
    ASSERT_LE(sig.omega(), sig.big_omega());
    ASSERT_EQ(sig.omega_upto(sieve.limit()), sig.omega());
    ASSERT_EQ(sig.big_omega_upto(1), 0);
    ASSERT_EQ(sieve.big_omega(n), sig.big_omega());
  }
}

TEST(Factorize, RoundTripSampled) {
  const auto sieve = FactorSieve::build(1'000'000);
  std::mt19937_64 gen(7);
  std::uniform_int_distribution<std::uint64_t> dist(1, 1'000'000);
  for (int i = 0; i < 20000; ++i) {
    const auto n = dist(gen);
    const auto sig = sieve.factorize(n);
    ASSERT_EQ(sig.recompose(), n);
    for (std::size_t j = 1; j < sig.factors().size(); ++j) {
      ASSERT_LT(sig.factors()[j - 1].prime, sig.factors()[j].prime);
    }
  }
}

TEST(GrowthCondition, Examples) {
  const auto sieve = FactorSieve::build(10000);
  EXPECT_TRUE(growth_condition_holds(sieve.factorize(97)));
  EXPECT_TRUE(growth_condition_holds(sieve.factorize(2)));
  EXPECT_FALSE(growth_condition_holds(sieve.factorize(2310)));
  // omega(6, 3) = 2 at t = 3: log log 3 / log 4 + 2 = 2.068 >= 2.
  EXPECT_TRUE(growth_condition_holds(sieve.factorize(6)));
  // Smaller slack rejects it.
  EXPECT_FALSE(growth_condition_holds(sieve.factorize(6), 1.0));
}

TEST(GrowthCondition, AgreesWithDenseScan) {
  const std::uint64_t limit = 10000;
  const auto sieve = FactorSieve::build(limit);
  for (double slack : {2.0, 1.0, 1.5}) {
    for (std::uint64_t m = 1; m <= limit; ++m) {
      ASSERT_EQ(growth_condition_holds(sieve.factorize(m), slack), oracle::growth_dense(m, limit, slack))
          << "m=" << m << " slack=" << slack;
    }
  }
}

TEST(PrimePosition, Examples) {
  const auto sieve = FactorSieve::build(2000);
  EXPECT_TRUE(prime_position_condition(sieve.factorize(6)));
  EXPECT_TRUE(prime_position_condition(sieve.factorize(2 * 997)));
  EXPECT_TRUE(prime_position_condition(sieve.factorize(97)));
  EXPECT_FALSE(prime_position_condition(sieve.factorize(30)));
}

TEST(PrimePosition, ImpliesGrowthCondition) {
  const auto sieve = FactorSieve::build(100000);
  int passing = 0;
  for (std::uint64_t m = 1; m <= 100000; ++m) {
    const auto sig = sieve.factorize(m);
    if (sig.omega() <= 2) ASSERT_TRUE(prime_position_condition(sig)) << m;
    if (prime_position_condition(sig)) {
      ++passing;
      ASSERT_TRUE(growth_condition_holds(sig, 2.0)) << m;
    }
  }
  EXPECT_GT(passing, 0);
}
