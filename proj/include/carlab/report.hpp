#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace carlab {

// One CSV cell: text, real (17 significant digits), integer, or boolean.
using CsvValue = std::variant<std::string, double, std::int64_t, bool>;

// Report = '#'-prefixed preamble (tool version, command, config hash, the
// fully resolved config) followed by an RFC-4180 table: header row, CRLF
// line endings, '.' decimal separator, quoting only where required.
class CsvReport {
 public:
  CsvReport(std::string command, std::string resolved_config_json);

  void set_columns(std::vector<std::string> columns);
  void add_row(std::vector<CsvValue> row);
  void write(std::ostream& out) const;

 private:
  std::string command_;
  std::string config_json_;
  std::uint64_t config_hash_;
  std::vector<std::string> columns_;
  std::vector<std::vector<CsvValue>> rows_;
};

// FNV-1a 64-bit; fingerprint for canonical config serializations.
std::uint64_t fnv1a_hash(const std::string& text);

std::string format_double(double value);

}  // namespace carlab
