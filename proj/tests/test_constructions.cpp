#include "prodset/constructions.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "prodset/errors.hpp"

using namespace prodset;

namespace {

const FactorSieve& sieve_1e5() {
  static const FactorSieve sieve = FactorSieve::build(100000);
  return sieve;
}

// Squarefree, omega = k, growth bound checked densely over integer t.
std::vector<std::uint64_t> oracle_b(std::uint64_t n, int k, double slack) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t m = n / 2 + 1; m <= n; ++m) {
    const auto f = oracle::factor(m);
    if (static_cast<int>(f.size()) != k) continue;
    if (std::any_of(f.begin(), f.end(), [](const auto& pe) { return pe.second != 1; })) continue;
    if (oracle::growth_dense(m, n, slack)) out.push_back(m);
  }
  return out;
}

bool is_subset(const std::vector<std::uint64_t>& small, const std::vector<std::uint64_t>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

TEST(BuildB, HundredIsTheUpperPrimes) {
  const auto b = build_B(100, sieve_1e5());
  EXPECT_EQ(b.k, 1);
  EXPECT_EQ(b.elements, (std::vector<std::uint64_t>{53, 59, 61, 67, 71, 73, 79, 83, 89, 97}));
  EXPECT_NEAR(b.size_comparator, 49.61598276333304, 1e-9);
  EXPECT_EQ(build_B_prime_position(100, sieve_1e5()), b.elements);
}

TEST(BuildB, RangeAndMembershipInvariants) {
  for (std::uint64_t n : {100u, 1000u, 4321u, 100000u}) {
    const auto b = build_B(n, sieve_1e5());
    for (const auto m : b.elements) {
      ASSERT_GT(2 * m, n);
      ASSERT_LE(m, n);
      const auto sig = sieve_1e5().factorize(m);
      ASSERT_TRUE(sig.is_squarefree());
      ASSERT_EQ(sig.omega(), b.k);
      ASSERT_TRUE(growth_condition_holds(sig, b.slack));
    }
  }
}

TEST(BuildB, MatchesDenseOracle) {
  for (std::uint64_t n : {100u, 257u, 1000u, 4096u, 10000u}) {
    for (int k : {1, 2, 3, 4}) {
      for (double slack : {2.0, 1.0}) {
        ASSERT_EQ(build_B_with_k(n, k, sieve_1e5(), slack).elements, oracle_b(n, k, slack))
            << "n=" << n << " k=" << k << " slack=" << slack;
      }
    }
  }
  EXPECT_EQ(build_B(10000, sieve_1e5()).elements, oracle_b(10000, derive_params(10000).k, 2.0));
}

TEST(BuildB, PrimePositionIsSubset) {
  for (std::uint64_t n : {1000u, 10000u, 100000u}) {
    for (int k : {1, 2, 3, 4}) {
      const auto b = build_B_with_k(n, k, sieve_1e5()).elements;
      const auto pp = build_B_prime_position_with_k(n, k, sieve_1e5());
      ASSERT_TRUE(is_subset(pp, b)) << "n=" << n << " k=" << k;
      ASSERT_LE(pp.size(), b.size());
    }
    ASSERT_TRUE(is_subset(build_B_prime_position(n, sieve_1e5()), build_B(n, sieve_1e5()).elements));
  }
}

TEST(BuildB, Errors) {
  EXPECT_THROW(build_B(99, sieve_1e5()), DomainError);
  EXPECT_THROW(build_B(200000, sieve_1e5()), RangeError);
}

TEST(BuildB, WorkerInvariance) {
  EXPECT_EQ(build_B_with_k(100000, 2, sieve_1e5(), 2.0, 1).elements,
            build_B_with_k(100000, 2, sieve_1e5(), 2.0, 8).elements);
}

TEST(DefaultRho, Values) {
  EXPECT_NEAR(default_rho(1'000'000, 10), 0.014503719321766523, 1e-15);
  EXPECT_LT(default_rho(1'000'000, 1000), default_rho(1'000'000, 10));
  EXPECT_THROW(default_rho(1'000'000, 0.0), DomainError);
  EXPECT_THROW(default_rho(1'000'000, 1e-3), DomainError);  // rho > 1
  EXPECT_NEAR(default_g(1'000'000), std::log(std::log(std::log(1e6))), 1e-15);
}

TEST(RandomThin, FullRhoAndDeterminism) {
  std::vector<std::uint64_t> b(1000);
  std::iota(b.begin(), b.end(), 1);
  EXPECT_EQ(random_thin(b, 1.0, 99), b);
  EXPECT_EQ(random_thin(b, 0.3, 42), random_thin(b, 0.3, 42));
  EXPECT_NE(random_thin(b, 0.3, 42), random_thin(b, 0.3, 43));
  EXPECT_THROW(random_thin(b, 0.0, 1), DomainError);
  EXPECT_THROW(random_thin(b, 1.5, 1), DomainError);
}

TEST(RandomThin, OrderIndependent) {
  std::vector<std::uint64_t> b(5000);
  std::iota(b.begin(), b.end(), 100);
  auto shuffled = b;
  std::mt19937_64 gen(1);
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  auto from_shuffled = random_thin(shuffled, 0.4, 7);
  std::sort(from_shuffled.begin(), from_shuffled.end());
  EXPECT_EQ(from_shuffled, random_thin(b, 0.4, 7));
}

TEST(RandomThin, BinomialMoments) {
  std::vector<std::uint64_t> b(10000);
  std::iota(b.begin(), b.end(), 1);
  const auto half = random_thin(b, 0.5, 2024);
  EXPECT_LE(std::fabs(static_cast<double>(half.size()) - 5000.0), 4 * 50.0);

  const double rho = 0.3;
  const int seeds = 200;
  double sum = 0;
  double sum_sq = 0;
  for (int s = 0; s < seeds; ++s) {
    const double size = static_cast<double>(random_thin(b, rho, static_cast<std::uint64_t>(s)).size());
    sum += size;
    sum_sq += size * size;
  }
  const double mean = sum / seeds;
  const double variance = (sum_sq - seeds * mean * mean) / (seeds - 1);
  const double expected_mean = rho * 10000;
  const double expected_var = 10000 * rho * (1 - rho);
  EXPECT_LE(std::fabs(mean - expected_mean), 0.01 * expected_mean);
  EXPECT_LE(std::fabs(variance - expected_var), 0.2 * expected_var);
}

TEST(Thinning, PredictorMatchesExactExpectationShape) {
  // For tau in {1, 2}: squares contribute 1 - sqrt(1 - rho^2), pairs rho^2.
  TauProfile profile;
  profile.add(1, 10);
  profile.add(2, 45);
  const double rho = 0.1;
  const double expected = 10 * (1 - std::sqrt(1 - rho * rho)) + 45 * rho * rho;
  EXPECT_NEAR(thinning_predictor(profile, rho), expected, 1e-14);
}

TEST(Thinning, ExperimentInvariants) {
  const auto out = thinning_experiment(100000, 20, 5, sieve_1e5());
  const auto b = build_B(100000, sieve_1e5()).elements;
  EXPECT_EQ(out.size_b, b.size());
  EXPECT_TRUE(is_subset(out.a, b));
  EXPECT_LE(out.ratio_pairs, 1.0);
  EXPECT_LE(out.size_aa, out.size_a * (out.size_a + 1) / 2);
  ASSERT_TRUE(out.predictor.has_value());
  EXPECT_GT(*out.predictor, 0.0);
  EXPECT_EQ(out.size_aa, oracle::product_set_size(out.a, out.a));

  const auto again = thinning_experiment(100000, 20, 5, sieve_1e5(), {true, {kDefaultMemoryBudget, 8}});
  EXPECT_EQ(again.a, out.a);
  EXPECT_EQ(again.size_aa, out.size_aa);
  EXPECT_EQ(*again.predictor, *out.predictor);
}

TEST(BuildA, HundredThreshold) {
  const auto a = build_A_thm2(100, sieve_1e5());
  EXPECT_EQ(a.k, 1);
  EXPECT_NEAR(a.r, 1.6082816270080507, 1e-12);
  std::vector<std::uint64_t> expected;
  for (std::uint64_t m = 1; m <= 100; ++m) {
    if (oracle::big_omega(m) <= 2) expected.push_back(m);
  }
  EXPECT_EQ(a.elements, expected);
}

TEST(BuildA, MatchesOracleAndContainsPrimes) {
  for (std::uint64_t n : {100u, 1000u, 5000u, 10000u}) {
    const auto a = build_A_thm2(n, sieve_1e5());
    const double threshold = derive_params(n).omega_threshold();
    std::vector<std::uint64_t> expected;
    for (std::uint64_t m = 1; m <= n; ++m) {
      if (oracle::big_omega(m) <= threshold) expected.push_back(m);
    }
    ASSERT_EQ(a.elements, expected) << n;
    ASSERT_EQ(a.elements.front(), 1u);
    for (std::uint64_t p = 2; p <= n; ++p) {
      if (oracle::is_prime(p)) ASSERT_TRUE(std::binary_search(a.elements.begin(), a.elements.end(), p));
    }
  }
}

TEST(CoverageDeficit, PartitionAndCounts) {
  const std::uint64_t n = 1 << 10;
  const auto big = FactorSieve::build(n * n);
  const auto out = coverage_deficit(n, sieve_1e5(), &big);
  EXPECT_EQ(out.size_aa + out.deficit, out.mn);
  EXPECT_EQ(out.mn, oracle::multiplication_table(n));
  const auto a = build_A_thm2(n, sieve_1e5()).elements;
  EXPECT_EQ(out.size_aa, oracle::product_set_size(a, a));
  ASSERT_TRUE(out.d1.has_value());
  std::uint64_t d1 = 0;
  for (std::uint64_t c = 1; c <= n * n; ++c) d1 += big.big_omega(c) > out.params.product_threshold() ? 1 : 0;
  EXPECT_EQ(*out.d1, d1);

  const auto no_d1 = coverage_deficit(n, sieve_1e5(), nullptr);
  EXPECT_FALSE(no_d1.d1.has_value());
  EXPECT_EQ(no_d1.size_aa, out.size_aa);
}

TEST(CoverageDeficit, D2AgainstPairScan) {
  const std::uint64_t n = 300;
  const auto out = coverage_deficit(n, sieve_1e5(), nullptr);
  std::uint64_t d2 = 0;
  for (std::uint64_t a = 1; a <= n; ++a) {
    for (std::uint64_t b = 1; b <= n; ++b) {
      if (oracle::big_omega(a * b) <= out.params.product_threshold() &&
          oracle::big_omega(b) >= out.params.omega_threshold()) {
        ++d2;
      }
    }
  }
  EXPECT_EQ(out.d2, d2);
}

TEST(CoverageDeficit, D1DecreasesWithThreshold) {
  const std::uint64_t top = 1 << 20;
  const auto big = FactorSieve::build(top);
  std::uint64_t previous = ~std::uint64_t{0};
  for (int h = 0; h <= 18; ++h) {
    const auto d1 = count_big_omega_above(big, top, 2 + h);
    EXPECT_LE(d1, previous);
    previous = d1;
  }
  EXPECT_EQ(previous, 0u);  // Omega(c) <= 20 for c <= 2^20
}

TEST(D2Bound, UndefinedAtDeskScale) {
  EXPECT_THROW(d2_bound_evaluate(1'000'000), DomainError);
  EXPECT_THROW(d2_bound_evaluate(std::uint64_t{1} << 62), DomainError);
}

TEST(D2Bound, ExponentBehaviourAtLargeLogN) {
  double previous_gap = 0;
  bool first = true;
  for (double log2_n : {40.0, 100.0, 300.0, 700.0}) {
    const auto d = d2_bound_evaluate_from_log(std::exp(log2_n));
    EXPECT_LE(d.exponent, d.taylor_exponent + 1e-15);
    const double gap = d.log_bound_over_mn;
    if (!first) EXPECT_LT(gap, previous_gap);
    previous_gap = gap;
    first = false;
  }
  // Once x is small the h log((1 - x)/log 4) term is dominated.
  for (double log2_n : {300.0, 500.0, 700.0}) {
    const auto d = d2_bound_evaluate_from_log(std::exp(log2_n));
    EXPECT_LE(d.exponent, -2 * theta()) << log2_n;
  }
  // Near x = 1 it is not: the overflow term is positive and large.
  const auto near_one = d2_bound_evaluate_from_log(std::exp(30.0));
  EXPECT_GT(near_one.params.x, 0.9);
  EXPECT_GT(near_one.exponent, -2 * theta());
}
