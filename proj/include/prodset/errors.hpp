#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace prodset {

// Input outside the mathematical domain of an operation (log of a
// nonpositive value, N below the validity floor, rho outside (0, 1]).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Index or argument outside a table's range (n above a sieve limit,
// j-th prime factor past omega(n)).
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// A computation needs more memory than the configured budget allows.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t required_bytes,
                std::uint64_t budget_bytes)
      : std::runtime_error(what + " (requires " + std::to_string(required_bytes) +
                           " bytes, budget " + std::to_string(budget_bytes) + " bytes)"),
        required_bytes_(required_bytes),
        budget_bytes_(budget_bytes) {}

  std::uint64_t required_bytes() const noexcept { return required_bytes_; }
  std::uint64_t budget_bytes() const noexcept { return budget_bytes_; }

 private:
  std::uint64_t required_bytes_;
  std::uint64_t budget_bytes_;
};

}  // namespace prodset
