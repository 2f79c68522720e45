#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "prodset/constants.hpp"
#include "prodset/factor_sieve.hpp"
#include "prodset/memory.hpp"
#include "prodset/product_sets.hpp"

namespace prodset {

// Squarefree m in (N/2, N] with omega(m) = k whose small prime factors
// are not crowded: omega(m, t) <= log_2 t / log 4 + slack for 3 <= t <= N.
struct ExtremalSetB {
  std::uint64_t n = 0;
  int k = 0;
  double slack = 2.0;
  std::vector<std::uint64_t> elements;
  // N / ((log N)^theta (log_2 N)^{3/2})
  double size_comparator = 0;
};

// k = floor(log_2 N / log 4). Requires N >= kValidityFloor and a sieve
// covering N.
ExtremalSetB build_B(std::uint64_t n, const FactorSieve& sieve, double slack = 2.0, unsigned workers = 0);
// Same membership rule with an explicit k, for exploring k > 1 at small N.
ExtremalSetB build_B_with_k(std::uint64_t n, int k, const FactorSieve& sieve, double slack = 2.0,
                            unsigned workers = 0);

// The prime-position variant: log_2 p_j(m) >= (j - 2) log 4 replaces the
// omega(m, t) bound. Always a subset of build_B(N).
std::vector<std::uint64_t> build_B_prime_position(std::uint64_t n, const FactorSieve& sieve, unsigned workers = 0);
std::vector<std::uint64_t> build_B_prime_position_with_k(std::uint64_t n, int k, const FactorSieve& sieve,
                                                         unsigned workers = 0);

// 1 / ((log_2 N)^2 g). Throws DomainError unless the result lies in (0, 1].
double default_rho(std::uint64_t n, double g);
// g(N) = log_3 N, the default growth function.
double default_g(std::uint64_t n);

// Keeps b when mix(seed, b) < rho * 2^64. Membership depends only on
// (seed, b), never on the position of b in the input.
std::vector<std::uint64_t> random_thin(std::span<const std::uint64_t> b, double rho, std::uint64_t seed);
bool thinning_keeps(std::uint64_t element, double rho, std::uint64_t seed) noexcept;

// sum over x of 1 - (1 - rho^2)^{tau_B(x) / 2}.
double thinning_predictor(const TauProfile& profile, double rho);

struct ThinningOutcome {
  std::uint64_t n = 0;
  double g = 0;
  std::uint64_t seed = 0;
  double rho = 0;
  std::uint64_t size_b = 0;
  std::vector<std::uint64_t> a;
  std::uint64_t size_a = 0;
  std::uint64_t size_aa = 0;
  double ratio_pairs = 0;  // |AA| / (|A| (|A| + 1) / 2)
  double ratio_size = 0;   // |A| / (rho |B|)
  std::optional<double> predictor;
  // Finite stand-ins for the asymptotic hypotheses on rho, with f(N) = (log_2 N)^4.
  double rho_sq_f = 0;          // rho^2 f(N)
  double rho_b_sq_over_n11 = 0; // rho |B|^2 / N^1.1
  double f_over_sqrt_b = 0;     // f(N) / |B|^{1/2}
};

struct ThinningOptions {
  bool compute_predictor = true;
  ExecutionConfig exec{};
};

// Thins a prebuilt B; `profile` (tau histogram of B) is used for the
// predictor when supplied, computed otherwise.
ThinningOutcome thin_and_measure(std::uint64_t n, std::span<const std::uint64_t> b, double g, std::uint64_t seed,
                                 const ThinningOptions& options = {}, const TauProfile* profile = nullptr);

ThinningOutcome thinning_experiment(std::uint64_t n, double g, std::uint64_t seed, const FactorSieve& sieve,
                                    const ThinningOptions& options = {});

struct OmegaBoundedSetA {
  std::uint64_t n = 0;
  int k = 0;
  double r = 0;
  std::vector<std::uint64_t> elements;  // {m <= N : Omega(m) <= k + r}
  // (N / (log N)^theta) exp{(2/3) sqrt(log_2 N log_3 N)}
  double size_comparator = 0;
};

OmegaBoundedSetA build_A_thm2(std::uint64_t n, const FactorSieve& sieve, unsigned workers = 0);

struct CoverageDeficit {
  std::uint64_t n = 0;
  ConstructionParams params;
  std::uint64_t size_a = 0;
  std::uint64_t mn = 0;         // M_N
  std::uint64_t size_aa = 0;    // |AA|
  std::uint64_t deficit = 0;    // |[N][N] \ AA|
  double coverage = 0;          // |AA| / M_N
  std::optional<std::uint64_t> d1;  // #{c <= N^2 : Omega(c) > 2k + h}
  std::uint64_t d2 = 0;         // #{(a, b) in [N]^2 : Omega(ab) <= 2k + h, Omega(b) >= k + r}
};

// #{c <= top : Omega(c) > threshold}; the sieve must cover top.
std::uint64_t count_big_omega_above(const FactorSieve& sieve, std::uint64_t top, int threshold, unsigned workers = 0);

// D_1 needs `product_sieve` covering N^2; without it only the coverage
// figures and D_2 are reported.
CoverageDeficit coverage_deficit(std::uint64_t n, const FactorSieve& sieve, const FactorSieve* product_sieve,
                                 const ExecutionConfig& config = {});

struct D2Bound {
  ConstructionParams params;
  double exponent = 0;          // exponent of log N in the D_2 bound before Taylor's inequality
  double taylor_exponent = 0;   // same with (1+x)log(1+x) + (1-x)log(1-x) replaced by x^2
  double log_bound = 0;         // log of N^2 (log N)^{-2 theta} (log_2 N)^{-3.8}
  double log_mn_prediction = 0; // log of mn_prediction(N)
  double log_bound_over_mn = 0; // log_bound - log_mn_prediction, formed without cancellation
};

// Throws DomainError when x >= 1 (no admissible tilt weights).
D2Bound d2_bound_evaluate(std::uint64_t n);
D2Bound d2_bound_evaluate_from_log(double log_n);

}  // namespace prodset
