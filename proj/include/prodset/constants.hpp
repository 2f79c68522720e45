#pragma once

#include <cstdint>
#include <optional>

namespace prodset {

// Smallest N accepted by the construction commands. Below it log_3 N is
// not positive or k = 0, and r, h lose their meaning.
inline constexpr std::uint64_t kValidityFloor = 100;

// The natural logarithm applied `depth` times. Throws DomainError when an
// intermediate argument is not positive or depth < 1.
double iterated_log(double x, int depth);

// Multiplication-table exponent 1 - (1 + log log 4) / log 4 = 0.0430356...
double theta() noexcept;
// The same constant written as 1/2 - (1 + log log 2) / log 4.
double theta_half_form() noexcept;
double theta_unit_form() noexcept;

// Tilt weights used to bound the pairs (a, b) with Omega(b) >= k + r and
// Omega(ab) <= 2k + h. Only defined when 0 < x < 1.
struct TiltWeights {
  double lambda1;  // (1 + x) / (1 - x)
  double lambda2;  // (1 - x) / log 4
};

struct ConstructionParams {
  std::uint64_t n = 0;  // 0 when the parameters were derived from log N alone
  double log_n = 0;
  double log2_n = 0;  // log log N
  double log3_n = 0;  // log log log N
  int k = 0;          // floor(log_2 N / log 4)
  double r = 0;       // 2 sqrt(log_2 N log_3 N)
  int h = 0;          // floor(5 log_3 N)
  double x = 0;       // r log 4 / log_2 N
  std::optional<TiltWeights> tilt;

  // Threshold on Omega(m) for the Omega-bounded set.
  double omega_threshold() const noexcept { return k + r; }
  // Threshold on Omega(c) for products counted in D_1.
  int product_threshold() const noexcept { return 2 * k + h; }
};

enum class FloorPolicy {
  kEnforce,  // N < kValidityFloor throws DomainError
  kClamp,    // any N >= 3; r, h, k clamped at 0 where the formulas go negative
};

ConstructionParams derive_params(std::uint64_t n, FloorPolicy policy = FloorPolicy::kEnforce);

// Same formulas evaluated from log N, for N far beyond 64-bit range.
// Requires log_n > e (so that log_3 N > 0).
ConstructionParams derive_params_from_log(double log_n);

// N^2 / ((log N)^{2 theta} (log log N)^{3/2}), the order of M_N with no
// implied constant. Throws DomainError for N <= e^e.
double mn_prediction(std::uint64_t n);
// Same with N given through log N.
double log_mn_prediction_from_log(double log_n);

// (1+x) log(1+x) + (1-x) log(1-x) >= x^2 - 1e-15. Throws DomainError for |x| >= 1.
bool taylor_inequality_check(double x);
double taylor_lhs(double x);

}  // namespace prodset
