#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hyperlat/rational.hpp"

namespace hyperlat::io {

// Shortest decimal round-trip representation at the given significance,
// locale-independent ('.' separator), valid as a JSON number.
std::string fmt_double(double v, int sig_digits = 12);

std::string fmt_int(const Int& v);

// JSON string literal with escaping.
std::string json_quote(const std::string& s);

// Single-line JSON object builder preserving insertion order; values are
// pre-serialized JSON fragments.
class JsonObj {
 public:
  JsonObj& raw(const std::string& key, const std::string& value_json);
  JsonObj& str(const std::string& key, const std::string& value);
  JsonObj& num(const std::string& key, double value, int sig_digits = 12);
  JsonObj& num(const std::string& key, std::uint64_t value);
  JsonObj& num(const std::string& key, std::int64_t value);
  JsonObj& num(const std::string& key, int value);
  JsonObj& boolean(const std::string& key, bool value);

  std::string line() const;  // {"k":v,...}, no trailing newline

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

// CSV document: one '#'-prefixed single-line JSON header comment carrying
// provenance, then a column-name row, then data rows.
class CsvDoc {
 public:
  CsvDoc(std::string header_json_line, std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);  // size must match columns
  void write(std::ostream& os) const;
  std::string str() const;

 private:
  std::string header_;
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

// Writes content to path ("-" means stdout); throws std::runtime_error on
// failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace hyperlat::io
