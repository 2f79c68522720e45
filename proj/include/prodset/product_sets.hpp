#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "prodset/memory.hpp"

namespace prodset {

// Largest N accepted by multiplication_table_size; N^2 must fit in 64 bits.
inline constexpr std::uint64_t kMaxTableN = 0xFFFFFFFFull;
// Largest N for which the flat N^2-bit bitset strategy is used.
inline constexpr std::uint64_t kFlatBitsetMaxN = std::uint64_t{1} << 15;

struct ProductCount {
  std::uint64_t product;
  std::uint64_t tau;  // ordered pairs (b1, b2) with b1 * b2 = product

  friend bool operator==(const ProductCount&, const ProductCount&) = default;
};

// Ordered-pair multiplicities tau_B(x) of a set B, sorted by product.
class ProductTally {
 public:
  ProductTally() = default;
  explicit ProductTally(std::vector<ProductCount> entries) : entries_(std::move(entries)) {}

  std::span<const ProductCount> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  // 0 when x is not a product.
  std::uint64_t tau(std::uint64_t x) const noexcept;
  std::uint64_t total_pairs() const noexcept;
  std::uint64_t energy() const noexcept;

  friend bool operator==(const ProductTally&, const ProductTally&) = default;

 private:
  std::vector<ProductCount> entries_;
};

// Histogram of tau values: how many distinct products have multiplicity
// tau. Enough to recover |BB|, E(B) and any sum of a function of tau.
class TauProfile {
 public:
  void add(std::uint64_t tau, std::uint64_t products) { histogram_[tau] += products; }
  void merge(const TauProfile& other);

  const std::map<std::uint64_t, std::uint64_t>& histogram() const noexcept { return histogram_; }
  std::uint64_t distinct_products() const noexcept;
  std::uint64_t ordered_pairs() const noexcept;
  std::uint64_t energy() const noexcept;
  std::uint64_t max_tau() const noexcept;

  friend bool operator==(const TauProfile&, const TauProfile&) = default;

 private:
  std::map<std::uint64_t, std::uint64_t> histogram_;
};

struct ProductSetSummary {
  std::uint64_t size = 0;        // |AB|
  std::uint64_t pair_count = 0;  // |A| |B|
  std::uint64_t max_tau = 0;     // largest number of pairs (a, b) sharing a product

  friend bool operator==(const ProductSetSummary&, const ProductSetSummary&) = default;
};

enum class TableStrategy { kAuto, kFlatBitset, kChunkedBitset };

// M_N = |{ab : 1 <= a, b <= N}|. kAuto picks the flat bitset for
// N <= kFlatBitsetMaxN when it fits the budget and range-partitioned
// chunks otherwise; both give the same count.
std::uint64_t multiplication_table_size(std::uint64_t n, const ExecutionConfig& config = {},
                                        TableStrategy strategy = TableStrategy::kAuto);

// Throws DomainError unless values are >= 1 and strictly increasing.
void validate_int_set(std::span<const std::uint64_t> values);

ProductSetSummary product_set(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                              const ExecutionConfig& config = {});

enum class TallyStrategy { kAuto, kHashMap, kSortRuns };

ProductTally tau_counts(std::span<const std::uint64_t> b, const ExecutionConfig& config = {},
                        TallyStrategy strategy = TallyStrategy::kAuto);

// Streams the range-partitioned enumeration of B x B into a tau histogram.
TauProfile tau_profile(std::span<const std::uint64_t> b, const ExecutionConfig& config = {});

// E(B) = sum over x of tau_B(x)^2.
std::uint64_t multiplicative_energy(std::span<const std::uint64_t> b, const ExecutionConfig& config = {});

struct EnergyDiagnostics {
  std::uint64_t energy = 0;
  std::uint64_t size = 0;
  double size_squared = 0;
  double log2_n_pow4 = 0;   // (log log N)^4
  double ratio = 0;         // E(B) / (|B|^2 (log log N)^4)
  std::uint64_t trivial_floor = 0;  // 2|B|^2 - |B|
};

EnergyDiagnostics energy_diagnostics(std::span<const std::uint64_t> b, std::uint64_t n,
                                     const ExecutionConfig& config = {});
EnergyDiagnostics energy_diagnostics(const TauProfile& profile, std::uint64_t set_size, std::uint64_t n);

}  // namespace prodset
