#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "prodset/memory.hpp"

namespace prodset {

struct PrimePower {
  std::uint64_t prime;
  std::uint32_t exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Prime factorization of one integer, primes strictly increasing.
// Sixteen slots cover every 64-bit integer (the product of the first 16
// primes exceeds 2^64).
class FactorSignature {
 public:
  static constexpr std::size_t kCapacity = 16;

  FactorSignature() = default;
  explicit FactorSignature(std::uint64_t n) : n_(n) {}

  // Appends a prime power; primes must be pushed in increasing order.
  void push(std::uint64_t prime, std::uint32_t exponent);

  std::uint64_t n() const noexcept { return n_; }
  std::span<const PrimePower> factors() const noexcept { return {factors_.data(), size_}; }

  // omega(n): distinct prime factors.
  int omega() const noexcept { return static_cast<int>(size_); }
  // Omega(n): prime factors with multiplicity.
  int big_omega() const noexcept;
  // omega(n, t): distinct prime factors p <= t.
  int omega_upto(std::uint64_t t) const noexcept;
  // Omega(n, t): full exponent mass of the primes p <= t.
  int big_omega_upto(std::uint64_t t) const noexcept;
  bool is_squarefree() const noexcept;
  // p_j(n), the j-th smallest distinct prime factor, 1 <= j <= omega(n).
  std::uint64_t jth_prime_factor(int j) const;

  // Product of prime^exponent; equals n() for a valid signature.
  std::uint64_t recompose() const;

 private:
  std::uint64_t n_ = 1;
  std::array<PrimePower, kCapacity> factors_{};
  std::size_t size_ = 0;
};

// Smallest-prime-factor table over [2, limit].
class FactorSieve {
 public:
  static constexpr std::uint64_t kMaxLimit = 0xFFFFFFFFull;

  // Throws CapacityError if 4 * (limit + 1) bytes exceed the budget,
  // DomainError if limit < 2 or limit > kMaxLimit.
  static FactorSieve build(std::uint64_t limit, MemoryBudget budget = kDefaultMemoryBudget);
  static std::uint64_t required_bytes(std::uint64_t limit) noexcept { return 4 * (limit + 1); }

  std::uint64_t limit() const noexcept { return spf_.size() - 1; }

  // Throws RangeError unless 2 <= n <= limit.
  std::uint64_t smallest_prime_factor(std::uint64_t n) const;
  bool is_prime(std::uint64_t n) const;

  // Throws RangeError unless 1 <= n <= limit. n = 1 has no factors.
  FactorSignature factorize(std::uint64_t n) const;
  // Omega(n) without building a signature; same range contract.
  int big_omega(std::uint64_t n) const;
  // Omega(n, t) without building a signature; same range contract.
  int big_omega_upto(std::uint64_t n, std::uint64_t t) const;

  // Primes p <= min(bound, limit) in increasing order.
  std::vector<std::uint64_t> primes_upto(std::uint64_t bound) const;

 private:
  explicit FactorSieve(std::vector<std::uint32_t> spf) : spf_(std::move(spf)) {}
  void check_range(std::uint64_t n, std::uint64_t low) const;

  std::vector<std::uint32_t> spf_;
};

// omega(m, t) <= log_2 t / log 4 + slack for every real t in [3, m]. Since
// omega(m, t) only steps at the prime factors of m and the right side is
// increasing, it suffices to test t = max(3, p_j(m)).
bool growth_condition_holds(const FactorSignature& sig, double slack = 2.0);

// log_2 p_j(m) >= (j - 2) log 4 for 1 <= j <= omega(m). Sufficient for
// growth_condition_holds(sig, 2).
bool prime_position_condition(const FactorSignature& sig);

}  // namespace prodset
