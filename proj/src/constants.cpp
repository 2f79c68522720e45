#include "prodset/constants.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "prodset/errors.hpp"

namespace prodset {

namespace {

const double kLog4 = std::log(4.0);

}  // namespace

double iterated_log(double x, int depth) {
  if (depth < 1) throw DomainError("iterated_log: depth must be >= 1, got " + std::to_string(depth));
  double value = x;
  for (int i = 1; i <= depth; ++i) {
    if (!(value > 0)) {
      throw DomainError("iterated_log: iterate " + std::to_string(i) + " of " + std::to_string(depth) +
                        " has nonpositive argument " + std::to_string(value));
    }
    value = std::log(value);
  }
  return value;
}

double theta_half_form() noexcept { return 0.5 - (1.0 + std::log(std::numbers::ln2)) / kLog4; }

double theta_unit_form() noexcept { return 1.0 - (1.0 + std::log(kLog4)) / kLog4; }

double theta() noexcept { return theta_unit_form(); }

namespace {

ConstructionParams params_from_logs(double log_n, double log2_n, double log3_n, bool clamp) {
  ConstructionParams p;
  p.log_n = log_n;
  p.log2_n = log2_n;
  p.log3_n = log3_n;
  p.k = static_cast<int>(std::floor(log2_n / kLog4));
  const double rr = log2_n * log3_n;
  p.r = rr > 0 ? 2.0 * std::sqrt(rr) : 0.0;
  p.h = static_cast<int>(std::floor(5.0 * log3_n));
  if (clamp) {
    if (p.k < 0) p.k = 0;
    if (p.h < 0) p.h = 0;
  }
  p.x = p.r * kLog4 / log2_n;
  if (p.x > 0 && p.x < 1) {
    p.tilt = TiltWeights{(1.0 + p.x) / (1.0 - p.x), (1.0 - p.x) / kLog4};
  }
  return p;
}

}  // namespace

ConstructionParams derive_params(std::uint64_t n, FloorPolicy policy) {
  const bool enforce = policy == FloorPolicy::kEnforce;
  if (enforce && n < kValidityFloor) {
    const double nn = static_cast<double>(n);
    std::string failing = "log_3 N";
    if (n < 3) {
      failing = "log_2 N";
    } else if (std::log(std::log(nn)) < kLog4) {
      failing = "log_2 N / log 4 (k would be 0)";
    }
    throw DomainError("N = " + std::to_string(n) + " is below the validity floor " +
                      std::to_string(kValidityFloor) + ": " + failing + " is too small");
  }
  if (n < 3) {
    throw DomainError("N = " + std::to_string(n) + ": log_2 N is undefined (log N <= 0 or log log N undefined)");
  }
  const double log_n = std::log(static_cast<double>(n));
  const double log2_n = std::log(log_n);
  // log_3 N is undefined for N <= e; clamp mode treats it as nonpositive.
  const double log3_n = log2_n > 0 ? std::log(log2_n) : -std::numeric_limits<double>::infinity();
  ConstructionParams p = params_from_logs(log_n, log2_n, log3_n, !enforce);
  p.n = n;
  if (!enforce && p.x < 0) p.x = 0;
  return p;
}

ConstructionParams derive_params_from_log(double log_n) {
  if (!(log_n > std::numbers::e)) {
    throw DomainError("derive_params_from_log: log N must exceed e so that log_3 N > 0");
  }
  const double log2_n = std::log(log_n);
  return params_from_logs(log_n, log2_n, std::log(log2_n), false);
}

double log_mn_prediction_from_log(double log_n) {
  if (!(log_n > std::numbers::e)) throw DomainError("mn_prediction: requires N > e^e");
  const double log2_n = std::log(log_n);
  return 2.0 * log_n - 2.0 * theta() * log2_n - 1.5 * std::log(log2_n);
}

double mn_prediction(std::uint64_t n) {
  const double nn = static_cast<double>(n);
  if (n < 3 || !(std::log(std::log(nn)) > 1.0)) {
    throw DomainError("mn_prediction: N = " + std::to_string(n) + " must exceed e^e");
  }
  const double log_n = std::log(nn);
  return nn * nn / (std::pow(log_n, 2.0 * theta()) * std::pow(std::log(log_n), 1.5));
}

double taylor_lhs(double x) {
  if (!(std::fabs(x) < 1.0)) throw DomainError("taylor inequality needs |x| < 1");
  return (1.0 + x) * std::log1p(x) + (1.0 - x) * std::log1p(-x);
}

bool taylor_inequality_check(double x) { return taylor_lhs(x) >= x * x - 1e-15; }

}  // namespace prodset
