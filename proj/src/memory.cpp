#include "prodset/memory.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>
#include <thread>

#include "prodset/errors.hpp"

namespace prodset {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

MemoryBudget parse_memory_budget(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size() &&
         (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
    ++pos;
  }
  double value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + pos, value);
  if (pos == 0 || ec != std::errc{} || ptr != text.data() + pos || value < 0) {
    throw DomainError("malformed memory budget '" + std::string(text) + "'");
  }

  const std::string suffix = lower(text.substr(pos));
  double scale = 1;
  if (suffix.empty() || suffix == "b") {
    scale = 1;
  } else if (suffix == "k" || suffix == "kib") {
    scale = 1024.0;
  } else if (suffix == "kb") {
    scale = 1e3;
  } else if (suffix == "m" || suffix == "mib") {
    scale = 1024.0 * 1024.0;
  } else if (suffix == "mb") {
    scale = 1e6;
  } else if (suffix == "g" || suffix == "gib") {
    scale = 1024.0 * 1024.0 * 1024.0;
  } else if (suffix == "gb") {
    scale = 1e9;
  } else if (suffix == "t" || suffix == "tib") {
    scale = 1024.0 * 1024.0 * 1024.0 * 1024.0;
  } else if (suffix == "tb") {
    scale = 1e12;
  } else {
    throw DomainError("unknown memory budget suffix '" + suffix + "'");
  }
  const double bytes = std::floor(value * scale);
  if (bytes >= 18446744073709551615.0) throw DomainError("memory budget too large");
  return MemoryBudget{static_cast<std::uint64_t>(bytes)};
}

unsigned resolve_workers(unsigned requested) noexcept {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace prodset
