#include "prodset/factor_sieve.hpp"

#include <cmath>
#include <string>

#include "prodset/errors.hpp"

namespace prodset {

void FactorSignature::push(std::uint64_t prime, std::uint32_t exponent) {
  if (size_ == kCapacity) throw RangeError("FactorSignature: too many distinct primes");
  if (size_ > 0 && factors_[size_ - 1].prime >= prime) {
    throw DomainError("FactorSignature: primes must be pushed in increasing order");
  }
  factors_[size_++] = PrimePower{prime, exponent};
}

int FactorSignature::big_omega() const noexcept {
  int total = 0;
  for (const auto& f : factors()) total += static_cast<int>(f.exponent);
  return total;
}

int FactorSignature::omega_upto(std::uint64_t t) const noexcept {
  int count = 0;
  for (const auto& f : factors()) {
    if (f.prime > t) break;
    ++count;
  }
  return count;
}

int FactorSignature::big_omega_upto(std::uint64_t t) const noexcept {
  int total = 0;
  for (const auto& f : factors()) {
    if (f.prime > t) break;
    total += static_cast<int>(f.exponent);
  }
  return total;
}

bool FactorSignature::is_squarefree() const noexcept {
  for (const auto& f : factors()) {
    if (f.exponent != 1) return false;
  }
  return true;
}

std::uint64_t FactorSignature::jth_prime_factor(int j) const {
  if (j < 1 || static_cast<std::size_t>(j) > size_) {
    throw RangeError("jth_prime_factor: j = " + std::to_string(j) + " outside [1, omega(n) = " +
                     std::to_string(size_) + "]");
  }
  return factors_[static_cast<std::size_t>(j - 1)].prime;
}

std::uint64_t FactorSignature::recompose() const {
  std::uint64_t value = 1;
  for (const auto& f : factors()) {
    for (std::uint32_t e = 0; e < f.exponent; ++e) value *= f.prime;
  }
  return value;
}

FactorSieve FactorSieve::build(std::uint64_t limit, MemoryBudget budget) {
  if (limit < 2) throw DomainError("build_sieve: limit must be >= 2");
  if (limit > kMaxLimit) throw DomainError("build_sieve: limit exceeds 2^32 - 1");
  if (!budget.fits(required_bytes(limit))) {
    throw CapacityError("build_sieve: limit " + std::to_string(limit) + " exceeds the memory budget",
                        required_bytes(limit), budget.bytes);
  }

  std::vector<std::uint32_t> spf(limit + 1, 0);
  for (std::uint64_t p = 2; p * p <= limit; ++p) {
    if (spf[p] != 0) continue;
    for (std::uint64_t m = p * p; m <= limit; m += p) {
      if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(p);
    }
  }
  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (spf[n] == 0) spf[n] = static_cast<std::uint32_t>(n);
  }
  return FactorSieve(std::move(spf));
}

void FactorSieve::check_range(std::uint64_t n, std::uint64_t low) const {
  if (n < low || n > limit()) {
    throw RangeError("n = " + std::to_string(n) + " outside sieve range [" + std::to_string(low) + ", " +
                     std::to_string(limit()) + "]");
  }
}

std::uint64_t FactorSieve::smallest_prime_factor(std::uint64_t n) const {
  check_range(n, 2);
  return spf_[n];
}

bool FactorSieve::is_prime(std::uint64_t n) const {
  if (n < 2) return false;
  check_range(n, 2);
  return spf_[n] == n;
}

FactorSignature FactorSieve::factorize(std::uint64_t n) const {
  check_range(n, 1);
  FactorSignature sig(n);
  std::uint64_t rest = n;
  while (rest > 1) {
    const std::uint32_t p = spf_[rest];
    std::uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    sig.push(p, e);
  }
  return sig;
}

int FactorSieve::big_omega(std::uint64_t n) const {
  check_range(n, 1);
  int total = 0;
  while (n > 1) {
    n /= spf_[n];
    ++total;
  }
  return total;
}

int FactorSieve::big_omega_upto(std::uint64_t n, std::uint64_t t) const {
  check_range(n, 1);
  int total = 0;
  while (n > 1) {
    const std::uint32_t p = spf_[n];
    n /= p;
    if (p <= t) ++total;
  }
  return total;
}

std::vector<std::uint64_t> FactorSieve::primes_upto(std::uint64_t bound) const {
  const std::uint64_t top = std::min(bound, limit());
  std::vector<std::uint64_t> primes;
  for (std::uint64_t n = 2; n <= top; ++n) {
    if (spf_[n] == n) primes.push_back(n);
  }
  return primes;
}

namespace {

const double kLog4 = std::log(4.0);

double log2_of(std::uint64_t p) { return std::log(std::log(static_cast<double>(p))); }

}  // namespace

bool growth_condition_holds(const FactorSignature& sig, double slack) {
  const auto factors = sig.factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const std::uint64_t t = std::max<std::uint64_t>(3, factors[i].prime);
    const int count = sig.omega_upto(t);
    if (static_cast<double>(count) > log2_of(t) / kLog4 + slack) return false;
  }
  return true;
}

bool prime_position_condition(const FactorSignature& sig) {
  const auto factors = sig.factors();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const double j = static_cast<double>(i + 1);
    if (log2_of(factors[i].prime) < (j - 2.0) * kLog4) return false;
  }
  return true;
}

}  // namespace prodset
