#include "prodset/tilted_sums.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "prodset/errors.hpp"
#include "prodset/parallel.hpp"

namespace prodset {

namespace {

const double kLog4 = std::log(4.0);
constexpr std::uint64_t kSumBlock = std::uint64_t{1} << 16;
// Omega(n) < 64 for every n < 2^64.
constexpr int kMaxOmega = 64;

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0;
  double carry_ = 0;
};

void check_lambda(double lambda) {
  if (!(lambda > 0 && lambda <= kMaxTiltLambda)) {
    throw DomainError("lambda = " + std::to_string(lambda) + " outside (0, 1.9]");
  }
}

void check_cover(const FactorSieve& sieve, std::uint64_t x) {
  if (x > sieve.limit()) {
    throw RangeError("x = " + std::to_string(x) + " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
}

std::vector<double> powers(double base, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  double v = 1.0;
  for (auto& p : out) {
    p = v;
    v *= base;
  }
  return out;
}

// Block-partitioned compensated sum of weight(n) over 1 <= n <= x.
template <class Weight>
double blocked_sum(std::uint64_t x, unsigned workers, Weight&& weight) {
  if (x == 0) return 0.0;
  const std::uint64_t blocks = (x - 1) / kSumBlock + 1;
  std::vector<double> partials(blocks, 0.0);
  parallel_for(blocks, workers, [&](std::size_t i) {
    const std::uint64_t lo = 1 + i * kSumBlock;
    const std::uint64_t hi = std::min(x, lo + kSumBlock - 1);
    CompensatedSum acc;
    for (std::uint64_t n = lo; n <= hi; ++n) acc.add(weight(n));
    partials[i] = acc.value();
  });
  CompensatedSum total;
  for (const double p : partials) total.add(p);
  return total.value();
}

}  // namespace

double tilted_sum(const TiltParams& params, const FactorSieve& sieve, unsigned workers) {
  check_lambda(params.lambda);
  if (params.t < 2) throw DomainError("tilted_sum: t must be >= 2");
  check_cover(sieve, params.x_limit);
  const auto table = powers(params.lambda, kMaxOmega);
  return blocked_sum(params.x_limit, workers, [&](std::uint64_t n) {
    return table[static_cast<std::size_t>(sieve.big_omega_upto(n, params.t))];
  });
}

double hr_ratio(const TiltParams& params, const FactorSieve& sieve, unsigned workers) {
  if (params.t < 3) throw DomainError("hr_ratio: t must be >= 3");
  const double sum = tilted_sum(params, sieve, workers);
  const double scale =
      static_cast<double>(params.x_limit) * std::pow(std::log(static_cast<double>(params.t)), params.lambda - 1.0);
  return sum / scale;
}

double prime_reciprocal_sum(std::uint64_t x, const FactorSieve& sieve) {
  check_cover(sieve, x);
  CompensatedSum acc;
  for (const auto p : sieve.primes_upto(x)) acc.add(1.0 / static_cast<double>(p));
  return acc.value();
}

double hr_general_ratio(std::uint64_t x, double lambda, const FactorSieve& sieve, unsigned workers) {
  check_lambda(lambda);
  if (x < 2) throw DomainError("hr_general_ratio: x must be >= 2");
  check_cover(sieve, x);
  const auto table = powers(lambda, kMaxOmega);
  const double sum =
      blocked_sum(x, workers, [&](std::uint64_t n) { return table[static_cast<std::size_t>(sieve.big_omega(n))]; });
  const double xx = static_cast<double>(x);
  const double scale = xx / std::log(xx) * std::exp(lambda * prime_reciprocal_sum(x, sieve));
  return sum / scale;
}

D1Report d1_exact_vs_bound(std::uint64_t n, const FactorSieve& product_sieve, unsigned workers) {
  D1Report out;
  out.params = derive_params(n);
  out.threshold = out.params.product_threshold();
  const std::uint64_t top = n * n;
  check_cover(product_sieve, top);

  const double inv_log2 = 1.0 / std::log(2.0);
  // (1/log 2)^{w - threshold} for w in [0, 64).
  std::vector<double> weights(kMaxOmega);
  for (int w = 0; w < kMaxOmega; ++w) weights[static_cast<std::size_t>(w)] = std::pow(inv_log2, w - out.threshold);

  const std::uint64_t blocks = (top - 1) / kSumBlock + 1;
  std::vector<std::uint64_t> counts(blocks, 0);
  std::vector<double> partials(blocks, 0.0);
  parallel_for(blocks, workers, [&](std::size_t i) {
    const std::uint64_t lo = 1 + i * kSumBlock;
    const std::uint64_t hi = std::min(top, lo + kSumBlock - 1);
    CompensatedSum acc;
    std::uint64_t c = 0;
    for (std::uint64_t m = lo; m <= hi; ++m) {
      const int w = product_sieve.big_omega(m);
      if (w > out.threshold) ++c;
      acc.add(weights[static_cast<std::size_t>(w)]);
    }
    counts[i] = c;
    partials[i] = acc.value();
  });
  CompensatedSum majorant;
  for (std::size_t i = 0; i < blocks; ++i) {
    out.exact += counts[i];
    majorant.add(partials[i]);
  }
  out.majorant = majorant.value();

  const double nn = static_cast<double>(n);
  out.closed_form = nn * nn * std::pow(out.params.log_n, -2.0 * theta()) * std::pow(std::log(2.0), out.params.h);
  out.mn_prediction = mn_prediction(n);
  out.majorant_over_mn = out.majorant / out.mn_prediction;
  return out;
}

Lemma4Bound lemma4_bound_evaluate(std::uint64_t n, std::uint64_t t) {
  if (t < 4) throw DomainError("lemma4_bound_evaluate: T must be >= 4, got " + std::to_string(t));
  const ConstructionParams p = derive_params(n);
  Lemma4Bound out;
  out.n = n;
  out.t = t;
  const double nn = static_cast<double>(n);
  const double base = nn * nn / std::pow(p.log_n, 2.0 * theta());
  const double log_t = std::log(static_cast<double>(t));
  out.comparator = base / log_t;
  out.summed_comparator = base * p.log2_n;
  const double sqrt_n = std::sqrt(nn);
  for (std::uint64_t dyadic = 4; static_cast<double>(dyadic) <= sqrt_n; dyadic *= 2) {
    out.dyadic_sum += base / std::log(static_cast<double>(dyadic));
  }

  out.z_t = std::log(std::log(4.0 * static_cast<double>(t))) / kLog4 + 2.0;
  const double l1_sq = 0.5;
  const double l2_sq = 1.0 / kLog4;
  const double log_expr = -2.0 * out.z_t * std::log(l1_sq) - 2.0 * p.k * std::log(l2_sq) + 2.0 * std::log(nn) +
                          (2.0 * l2_sq - 2.0) * std::log(p.log_n) +
                          (4.0 * l1_sq * l2_sq - 2.0 * l2_sq - 2.0) * std::log(log_t);
  out.tilted_expression = std::exp(log_expr);
  return out;
}

}  // namespace prodset
