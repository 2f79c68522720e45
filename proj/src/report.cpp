#include "prodset/report.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "prodset/errors.hpp"

namespace prodset {

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  // Integral values up to 2^53 print as plain integers, not 1e+05.
  if (value == std::trunc(value) && std::fabs(value) <= 9007199254740992.0) {
    return std::to_string(static_cast<std::int64_t>(value));
  }
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string format_number(std::uint64_t value) { return std::to_string(value); }

std::string format_number(std::int64_t value) { return std::to_string(value); }

namespace {

constexpr std::string_view kColumns[] = {"command", "n", "seed", "params", "measured", "comparator", "wall_time_ms",
                                         "error"};

bool clean_token(std::string_view s) { return s.find_first_of(",;=\r\n") == std::string_view::npos; }

std::string join(const std::vector<KeyValue>& list) {
  std::string out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i > 0) out += ';';
    out += list[i].key;
    out += '=';
    out += list[i].value;
  }
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

std::vector<KeyValue> parse_list(std::string_view s) {
  std::vector<KeyValue> list;
  if (s.empty()) return list;
  for (const auto item : split(s, ';')) {
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw DomainError("malformed key=value item '" + std::string(item) + "'");
    list.push_back({std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))});
  }
  return list;
}

template <class Int>
std::optional<Int> parse_optional(std::string_view s, const char* column) {
  if (s.empty()) return std::nullopt;
  Int v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw DomainError(std::string("malformed ") + column + " column '" + std::string(s) + "'");
  }
  return v;
}

std::string sanitize(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c == ',' || c == '\n' || c == '\r') c = ' ';
  }
  return out;
}

}  // namespace

void ExperimentReport::push(std::vector<KeyValue>& list, std::string key, std::string value) {
  if (!clean_token(key) || !clean_token(value) || key.empty()) {
    throw DomainError("report key/value contains a reserved character: '" + key + "'");
  }
  list.push_back({std::move(key), std::move(value)});
}

std::optional<std::string> ExperimentReport::find(std::string_view key) const {
  for (const auto* list : {&params, &measured, &comparator}) {
    for (const auto& kv : *list) {
      if (kv.key == key) return kv.value;
    }
  }
  return std::nullopt;
}

std::string csv_header() {
  std::string out;
  for (std::size_t i = 0; i < std::size(kColumns); ++i) {
    if (i > 0) out += ',';
    out += kColumns[i];
  }
  return out;
}

std::string to_csv_row(const ExperimentReport& report) {
  std::string out = sanitize(report.command);
  out += ',';
  if (report.n) out += std::to_string(*report.n);
  out += ',';
  if (report.seed) out += std::to_string(*report.seed);
  out += ',';
  out += join(report.params);
  out += ',';
  out += join(report.measured);
  out += ',';
  out += join(report.comparator);
  out += ',';
  if (report.wall_time_ms) out += std::to_string(*report.wall_time_ms);
  out += ',';
  out += sanitize(report.error);
  return out;
}

ExperimentReport parse_csv_row(std::string_view row) {
  const auto fields = split(row, ',');
  if (fields.size() != std::size(kColumns)) {
    throw DomainError("CSV row has " + std::to_string(fields.size()) + " fields, expected " +
                      std::to_string(std::size(kColumns)));
  }
  ExperimentReport report;
  report.command = std::string(fields[0]);
  report.n = parse_optional<std::uint64_t>(fields[1], "n");
  report.seed = parse_optional<std::uint64_t>(fields[2], "seed");
  report.params = parse_list(fields[3]);
  report.measured = parse_list(fields[4]);
  report.comparator = parse_list(fields[5]);
  report.wall_time_ms = parse_optional<std::int64_t>(fields[6], "wall_time_ms");
  report.error = std::string(fields[7]);
  return report;
}

}  // namespace prodset
