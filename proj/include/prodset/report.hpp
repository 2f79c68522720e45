#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace prodset {

struct KeyValue {
  std::string key;
  std::string value;

  friend bool operator==(const KeyValue&, const KeyValue&) = default;
};

// Shortest decimal string that parses back to the same double;
// locale-independent. "nan", "inf" and "-inf" for non-finite values.
std::string format_number(double value);
std::string format_number(std::uint64_t value);
std::string format_number(std::int64_t value);
inline std::string format_number(int value) { return format_number(static_cast<std::int64_t>(value)); }
inline std::string format_number(unsigned value) { return format_number(static_cast<std::uint64_t>(value)); }
inline std::string format_number(const std::string& value) { return value; }

// One CSV row of an experiment. Keys and values may not contain ',', ';',
// '=' or line breaks; the error text is sanitized instead.
struct ExperimentReport {
  std::string command;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> seed;
  std::vector<KeyValue> params;
  std::vector<KeyValue> measured;
  std::vector<KeyValue> comparator;
  std::optional<std::int64_t> wall_time_ms;
  std::string error;

  template <class T>
  void param(std::string key, T value) {
    push(params, std::move(key), format_number(value));
  }
  template <class T>
  void measure(std::string key, T value) {
    push(measured, std::move(key), format_number(value));
  }
  template <class T>
  void compare(std::string key, T value) {
    push(comparator, std::move(key), format_number(value));
  }

  // Value of a measured/params/comparator key, if present.
  std::optional<std::string> find(std::string_view key) const;

  friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;

 private:
  static void push(std::vector<KeyValue>& list, std::string key, std::string value);
};

std::string csv_header();
std::string to_csv_row(const ExperimentReport& report);
// Inverse of to_csv_row. Throws DomainError on malformed rows.
ExperimentReport parse_csv_row(std::string_view row);

}  // namespace prodset
