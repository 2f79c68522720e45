#pragma once

#include <cstdint>

#include "prodset/constants.hpp"
#include "prodset/factor_sieve.hpp"

namespace prodset {

inline constexpr double kMaxTiltLambda = 1.9;

struct TiltParams {
  std::uint64_t x_limit = 1;
  std::uint64_t t = 2;  // prime cutoff for Omega(n, t)
  double lambda = 1.0;  // in (0, 1.9]
};

// Sum over n <= x of lambda^{Omega(n, t)}, accumulated per fixed block with
// compensated summation and merged in block order, so the result does not
// depend on `workers`.
double tilted_sum(const TiltParams& params, const FactorSieve& sieve, unsigned workers = 0);

// tilted_sum / (x (log t)^{lambda - 1}). Requires t >= 3.
double hr_ratio(const TiltParams& params, const FactorSieve& sieve, unsigned workers = 0);

// Sum over n <= x of lambda^{Omega(n)} divided by
// (x / log x) exp(sum over p <= x of lambda / p). Requires x >= 2.
double hr_general_ratio(std::uint64_t x, double lambda, const FactorSieve& sieve, unsigned workers = 0);

// Exact sum over primes p <= x of 1/p from the sieve.
double prime_reciprocal_sum(std::uint64_t x, const FactorSieve& sieve);

struct D1Report {
  ConstructionParams params;
  int threshold = 0;              // 2k + h
  std::uint64_t exact = 0;        // #{c <= N^2 : Omega(c) > 2k + h}
  double majorant = 0;            // sum over c <= N^2 of (1/log 2)^{Omega(c) - (2k + h)}
  double closed_form = 0;         // N^2 (log N)^{-2 theta} (1/log 2)^{-h}
  double mn_prediction = 0;
  double majorant_over_mn = 0;    // majorant / mn_prediction
};

// Requires a sieve covering N^2.
D1Report d1_exact_vs_bound(std::uint64_t n, const FactorSieve& product_sieve, unsigned workers = 0);

struct Lemma4Bound {
  std::uint64_t n = 0;
  std::uint64_t t = 0;
  double comparator = 0;        // N^2 / ((log N)^{2 theta} log T)
  double summed_comparator = 0; // N^2 log_2 N / (log N)^{2 theta}
  double dyadic_sum = 0;        // comparator summed over T = 2^j, 4 <= T <= sqrt(N)
  double z_t = 0;               // log_2(4T) / log 4 + 2
  // lambda1^{-4 z_T} lambda2^{-4k} N^2 (log N)^{2 lambda2^2 - 2}
  //   (log T)^{4 lambda1^2 lambda2^2 - 2 lambda2^2 - 2}
  // at lambda1^2 = 1/2, lambda2^2 = 1/log 4.
  double tilted_expression = 0;
};

// Throws DomainError when T < 4 or N < kValidityFloor.
Lemma4Bound lemma4_bound_evaluate(std::uint64_t n, std::uint64_t t);

}  // namespace prodset
