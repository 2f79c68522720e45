#pragma once

#include <cstdint>
#include <string_view>

namespace prodset {

struct MemoryBudget {
  std::uint64_t bytes = std::uint64_t{4} << 30;

  constexpr bool fits(std::uint64_t required) const noexcept { return required <= bytes; }
};

inline constexpr MemoryBudget kDefaultMemoryBudget{};

// Parses "4096", "512MiB", "4GiB", "1.5GB", "64k". Binary and decimal
// suffixes are both accepted; a bare number is bytes. Throws DomainError
// on malformed input.
MemoryBudget parse_memory_budget(std::string_view text);

// Execution knobs shared by the parallel kernels. Results never depend on
// `workers`; they may depend on `budget` only through capacity errors.
struct ExecutionConfig {
  MemoryBudget budget = kDefaultMemoryBudget;
  unsigned workers = 0;  // 0 = machine parallelism
};

unsigned resolve_workers(unsigned requested) noexcept;

}  // namespace prodset
