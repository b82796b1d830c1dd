#include "carlab/report.hpp"

#include <cstdio>
#include <stdexcept>

#include "carlab/types.hpp"

namespace carlab {

std::uint64_t fnv1a_hash(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string render(const CsvValue& value) {
  if (const auto* s = std::get_if<std::string>(&value)) return quote_if_needed(*s);
  if (const auto* d = std::get_if<double>(&value)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  return std::get<bool>(value) ? "true" : "false";
}

}  // namespace

CsvReport::CsvReport(std::string command, std::string resolved_config_json)
    : command_(std::move(command)),
      config_json_(std::move(resolved_config_json)),
      config_hash_(fnv1a_hash(config_json_)) {}

void CsvReport::set_columns(std::vector<std::string> columns) { columns_ = std::move(columns); }

void CsvReport::add_row(std::vector<CsvValue> row) {
  if (row.size() != columns_.size())
    throw std::logic_error("report row width does not match the header");
  rows_.push_back(std::move(row));
}

void CsvReport::write(std::ostream& out) const {
  char hash_hex[17];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(config_hash_));
  out << "# carlab " << kVersion << "\r\n";
  out << "# command=" << command_ << "\r\n";
  out << "# config_hash=" << hash_hex << "\r\n";
  out << "# config=" << config_json_ << "\r\n";
  for (std::size_t c = 0; c < columns_.size(); ++c)
    out << (c ? "," : "") << quote_if_needed(columns_[c]);
  out << "\r\n";
  for (const auto& row : rows_) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << render(row[c]);
    out << "\r\n";
  }
}

}  // namespace carlab
