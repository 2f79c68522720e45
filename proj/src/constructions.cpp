#include "prodset/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "prodset/errors.hpp"
#include "prodset/parallel.hpp"

namespace prodset {

namespace {

const double kLog4 = std::log(4.0);
constexpr std::uint64_t kScanBlock = std::uint64_t{1} << 15;

void require_sieve(const FactorSieve& sieve, std::uint64_t n, const char* what) {
  if (sieve.limit() < n) {
    throw RangeError(std::string(what) + ": sieve limit " + std::to_string(sieve.limit()) + " does not cover N = " +
                     std::to_string(n));
  }
}

// Collects every m in [first, last] with keep(m), in increasing order,
// scanning fixed blocks on the worker pool.
template <class Keep>
std::vector<std::uint64_t> scan_range(std::uint64_t first, std::uint64_t last, unsigned workers, Keep&& keep) {
  if (first > last) return {};
  const std::uint64_t blocks = (last - first) / kScanBlock + 1;
  std::vector<std::vector<std::uint64_t>> parts(blocks);
  parallel_for(blocks, workers, [&](std::size_t i) {
    const std::uint64_t lo = first + i * kScanBlock;
    const std::uint64_t hi = std::min(last, lo + kScanBlock - 1);
    for (std::uint64_t m = lo; m <= hi; ++m) {
      if (keep(m)) parts[i].push_back(m);
    }
  });
  std::vector<std::uint64_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

double b_size_comparator(std::uint64_t n) {
  const double log_n = std::log(static_cast<double>(n));
  return static_cast<double>(n) / (std::pow(log_n, theta()) * std::pow(std::log(log_n), 1.5));
}

}  // namespace

ExtremalSetB build_B_with_k(std::uint64_t n, int k, const FactorSieve& sieve, double slack, unsigned workers) {
  if (n < kValidityFloor) throw DomainError("build_B: N must be >= " + std::to_string(kValidityFloor));
  require_sieve(sieve, n, "build_B");
  ExtremalSetB set;
  set.n = n;
  set.k = k;
  set.slack = slack;
  set.size_comparator = b_size_comparator(n);
  set.elements = scan_range(n / 2 + 1, n, workers, [&](std::uint64_t m) {
    const FactorSignature sig = sieve.factorize(m);
    return sig.omega() == k && sig.is_squarefree() && growth_condition_holds(sig, slack);
  });
  return set;
}

ExtremalSetB build_B(std::uint64_t n, const FactorSieve& sieve, double slack, unsigned workers) {
  return build_B_with_k(n, derive_params(n).k, sieve, slack, workers);
}

std::vector<std::uint64_t> build_B_prime_position_with_k(std::uint64_t n, int k, const FactorSieve& sieve,
                                                         unsigned workers) {
  if (n < kValidityFloor) throw DomainError("build_B_prime_position: N must be >= " + std::to_string(kValidityFloor));
  require_sieve(sieve, n, "build_B_prime_position");
  return scan_range(n / 2 + 1, n, workers, [&](std::uint64_t m) {
    const FactorSignature sig = sieve.factorize(m);
    return sig.omega() == k && sig.is_squarefree() && prime_position_condition(sig);
  });
}

std::vector<std::uint64_t> build_B_prime_position(std::uint64_t n, const FactorSieve& sieve, unsigned workers) {
  return build_B_prime_position_with_k(n, derive_params(n).k, sieve, workers);
}

double default_g(std::uint64_t n) { return derive_params(n).log3_n; }

double default_rho(std::uint64_t n, double g) {
  const ConstructionParams p = derive_params(n);
  if (!(g > 0)) throw DomainError("default_rho: g must be positive");
  const double rho = 1.0 / (p.log2_n * p.log2_n * g);
  if (!(rho > 0 && rho <= 1)) {
    throw DomainError("default_rho: rho = " + std::to_string(rho) + " outside (0, 1]; increase g");
  }
  return rho;
}

namespace {

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace

bool thinning_keeps(std::uint64_t element, double rho, std::uint64_t seed) noexcept {
  if (rho >= 1.0) return true;
  if (!(rho > 0.0)) return false;
  const std::uint64_t h = mix64(mix64(element + 0x9e3779b97f4a7c15ull) ^ seed);
  // rho * 2^64, exact in long double for the 64-bit mantissa.
  const long double threshold = static_cast<long double>(rho) * 18446744073709551616.0L;
  return static_cast<long double>(h) < threshold;
}

std::vector<std::uint64_t> random_thin(std::span<const std::uint64_t> b, double rho, std::uint64_t seed) {
  if (!(rho > 0 && rho <= 1)) throw DomainError("random_thin: rho must lie in (0, 1]");
  std::vector<std::uint64_t> kept;
  for (const auto x : b) {
    if (thinning_keeps(x, rho, seed)) kept.push_back(x);
  }
  return kept;
}

double thinning_predictor(const TauProfile& profile, double rho) {
  const double log_keep = std::log1p(-rho * rho);
  double total = 0;
  for (const auto& [tau, count] : profile.histogram()) {
    const double term = -std::expm1(0.5 * static_cast<double>(tau) * log_keep);
    total += static_cast<double>(count) * term;
  }
  return total;
}

ThinningOutcome thin_and_measure(std::uint64_t n, std::span<const std::uint64_t> b, double g, std::uint64_t seed,
                                 const ThinningOptions& options, const TauProfile* profile) {
  ThinningOutcome out;
  out.n = n;
  out.g = g;
  out.seed = seed;
  out.rho = default_rho(n, g);
  out.size_b = b.size();
  out.a = random_thin(b, out.rho, seed);
  out.size_a = out.a.size();
  out.size_aa = product_set(out.a, out.a, options.exec).size;
  const double sa = static_cast<double>(out.size_a);
  out.ratio_pairs = out.size_a == 0 ? 0.0 : static_cast<double>(out.size_aa) / (0.5 * sa * (sa + 1.0));
  const double sb = static_cast<double>(out.size_b);
  out.ratio_size = out.size_b == 0 ? 0.0 : sa / (out.rho * sb);

  if (options.compute_predictor) {
    if (profile != nullptr) {
      out.predictor = thinning_predictor(*profile, out.rho);
    } else {
      out.predictor = thinning_predictor(tau_profile(b, options.exec), out.rho);
    }
  }

  const double log2_n = derive_params(n).log2_n;
  const double f = std::pow(log2_n, 4);
  out.rho_sq_f = out.rho * out.rho * f;
  out.rho_b_sq_over_n11 = out.rho * sb * sb / std::pow(static_cast<double>(n), 1.1);
  out.f_over_sqrt_b = out.size_b == 0 ? 0.0 : f / std::sqrt(sb);
  return out;
}

ThinningOutcome thinning_experiment(std::uint64_t n, double g, std::uint64_t seed, const FactorSieve& sieve,
                                    const ThinningOptions& options) {
  const ExtremalSetB b = build_B(n, sieve, 2.0, options.exec.workers);
  return thin_and_measure(n, b.elements, g, seed, options);
}

OmegaBoundedSetA build_A_thm2(std::uint64_t n, const FactorSieve& sieve, unsigned workers) {
  const ConstructionParams p = derive_params(n);
  require_sieve(sieve, n, "build_A_thm2");
  OmegaBoundedSetA set;
  set.n = n;
  set.k = p.k;
  set.r = p.r;
  const double threshold = p.omega_threshold();
  set.elements = scan_range(1, n, workers, [&](std::uint64_t m) {
    return static_cast<double>(sieve.big_omega(m)) <= threshold;
  });
  set.size_comparator = static_cast<double>(n) / std::pow(p.log_n, theta()) *
                        std::exp((2.0 / 3.0) * std::sqrt(p.log2_n * p.log3_n));
  return set;
}

std::uint64_t count_big_omega_above(const FactorSieve& sieve, std::uint64_t top, int threshold, unsigned workers) {
  require_sieve(sieve, top, "count_big_omega_above");
  if (top == 0) return 0;
  const std::uint64_t blocks = (top - 1) / kScanBlock + 1;
  std::vector<std::uint64_t> counts(blocks, 0);
  parallel_for(blocks, workers, [&](std::size_t i) {
    const std::uint64_t lo = 1 + i * kScanBlock;
    const std::uint64_t hi = std::min(top, lo + kScanBlock - 1);
    std::uint64_t c = 0;
    for (std::uint64_t m = lo; m <= hi; ++m) c += sieve.big_omega(m) > threshold ? 1 : 0;
    counts[i] = c;
  });
  std::uint64_t total = 0;
  for (const auto c : counts) total += c;
  return total;
}

CoverageDeficit coverage_deficit(std::uint64_t n, const FactorSieve& sieve, const FactorSieve* product_sieve,
                                 const ExecutionConfig& config) {
  CoverageDeficit out;
  out.n = n;
  out.params = derive_params(n);
  const OmegaBoundedSetA a = build_A_thm2(n, sieve, config.workers);
  out.size_a = a.elements.size();
  out.mn = multiplication_table_size(n, config);
  out.size_aa = product_set(a.elements, a.elements, config).size;
  out.deficit = out.mn - out.size_aa;
  out.coverage = static_cast<double>(out.size_aa) / static_cast<double>(out.mn);

  const int threshold = out.params.product_threshold();
  if (product_sieve != nullptr) out.d1 = count_big_omega_above(*product_sieve, n * n, threshold, config.workers);

  // Omega(ab) = Omega(a) + Omega(b), so D_2 is a convolution of the
  // Omega histogram of [N].
  std::vector<std::uint64_t> histogram;
  for (std::uint64_t m = 1; m <= n; ++m) {
    const auto w = static_cast<std::size_t>(sieve.big_omega(m));
    if (w >= histogram.size()) histogram.resize(w + 1, 0);
    ++histogram[w];
  }
  const double b_threshold = out.params.omega_threshold();
  for (std::size_t wb = 0; wb < histogram.size(); ++wb) {
    if (static_cast<double>(wb) < b_threshold) continue;
    for (std::size_t wa = 0; wa < histogram.size(); ++wa) {
      if (static_cast<int>(wa + wb) <= threshold) out.d2 += histogram[wa] * histogram[wb];
    }
  }
  return out;
}

namespace {

D2Bound d2_from_params(const ConstructionParams& p) {
  if (!p.tilt) {
    throw DomainError("d2_bound_evaluate: x = " + std::to_string(p.x) +
                      " is not in (0, 1); the tilt weights are undefined at this N");
  }
  D2Bound out;
  out.params = p;
  const double h_term = static_cast<double>(p.h) / p.log2_n * std::log((1.0 - p.x) / kLog4);
  out.exponent = -2.0 * theta() - taylor_lhs(p.x) / kLog4 - h_term;
  out.taylor_exponent = -2.0 * theta() - p.x * p.x / kLog4 - h_term;
  out.log_bound = 2.0 * p.log_n - 2.0 * theta() * p.log2_n - 3.8 * p.log3_n;
  out.log_mn_prediction = log_mn_prediction_from_log(p.log_n);
  // The 2 log N and 2 theta log_2 N terms cancel exactly.
  out.log_bound_over_mn = -(3.8 - 1.5) * p.log3_n;
  return out;
}

}  // namespace

D2Bound d2_bound_evaluate(std::uint64_t n) { return d2_from_params(derive_params(n)); }

D2Bound d2_bound_evaluate_from_log(double log_n) { return d2_from_params(derive_params_from_log(log_n)); }

}  // namespace prodset
