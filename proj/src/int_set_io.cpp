#include "prodset/int_set_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "prodset/errors.hpp"
#include "prodset/product_sets.hpp"

namespace prodset {

std::vector<std::uint64_t> read_int_set(std::istream& in) {
  std::vector<std::uint64_t> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
    if (ec != std::errc{} || ptr != line.data() + line.size()) {
      throw DomainError("set file line " + std::to_string(line_no) + ": not a decimal integer: '" + line + "'");
    }
    values.push_back(v);
  }
  validate_int_set(values);
  return values;
}

std::vector<std::uint64_t> read_int_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open set file " + path.string());
  return read_int_set(in);
}

void write_int_set(std::ostream& out, std::span<const std::uint64_t> values) {
  for (const auto v : values) out << v << '\n';
}

void write_int_set(const std::filesystem::path& path, std::span<const std::uint64_t> values) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write set file " + path.string());
  write_int_set(out, values);
}

}  // namespace prodset
