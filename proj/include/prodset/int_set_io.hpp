#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace prodset {

// Newline-delimited decimal integers, ascending, no duplicates. Blank lines
// are ignored. Throws DomainError on malformed or unsorted input.
std::vector<std::uint64_t> read_int_set(std::istream& in);
std::vector<std::uint64_t> read_int_set(const std::filesystem::path& path);

void write_int_set(std::ostream& out, std::span<const std::uint64_t> values);
void write_int_set(const std::filesystem::path& path, std::span<const std::uint64_t> values);

}  // namespace prodset
