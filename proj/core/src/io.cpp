#include "hyperlat/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace hyperlat::io {

std::string fmt_double(double v, int sig_digits) {
  if (!std::isfinite(v))
    throw std::invalid_argument("cannot format non-finite value");
  if (v == 0) v = 0;  // normalize -0
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, sig_digits);
  return std::string(buf, res.ptr);
}

std::string fmt_int(const Int& v) { return v.str(); }

std::string json_quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
  return out;
}

JsonObj& JsonObj::raw(const std::string& key, const std::string& value_json) {
  items_.emplace_back(key, value_json);
  return *this;
}

JsonObj& JsonObj::str(const std::string& key, const std::string& value) {
  return raw(key, json_quote(value));
}

JsonObj& JsonObj::num(const std::string& key, double value, int sig_digits) {
  return raw(key, fmt_double(value, sig_digits));
}

JsonObj& JsonObj::num(const std::string& key, std::uint64_t value) {
  return raw(key, std::to_string(value));
}

JsonObj& JsonObj::num(const std::string& key, std::int64_t value) {
  return raw(key, std::to_string(value));
}

JsonObj& JsonObj::num(const std::string& key, int value) {
  return raw(key, std::to_string(value));
}

JsonObj& JsonObj::boolean(const std::string& key, bool value) {
  return raw(key, value ? "true" : "false");
}

std::string JsonObj::line() const {
  std::string out = "{";
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) out += ",";
    out += json_quote(items_[i].first);
    out += ":";
    out += items_[i].second;
  }
  out += "}";
  return out;
}

CsvDoc::CsvDoc(std::string header_json_line, std::vector<std::string> columns)
    : header_(std::move(header_json_line)), columns_(std::move(columns)) {}

void CsvDoc::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size())
    throw std::invalid_argument("row width does not match column count");
  rows_.push_back(std::move(cells));
}

void CsvDoc::write(std::ostream& os) const {
  os << "# " << header_ << "\n";
  for (std::size_t i = 0; i < columns_.size(); ++i)
    os << (i ? "," : "") << columns_[i];
  os << "\n";
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

std::string CsvDoc::str() const {
  std::ostringstream os;
  write(os);
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  if (path == "-" || path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace hyperlat::io
