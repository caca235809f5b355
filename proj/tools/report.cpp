#include "report.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qgraph::cli {
namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return {buf, end};
}

Report::Report(std::vector<std::string> columns, std::vector<bool> quoted)
    : columns_(std::move(columns)), quoted_(std::move(quoted)) {
  quoted_.resize(columns_.size(), false);
}

Report& Report::row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) throw std::logic_error("report row has the wrong width");
  rows_.push_back(std::move(cells));
  return *this;
}

void Report::write_csv(std::ostream& out) const {
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& r : rows_) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << csv_cell(r[i]);
    out << '\n';
  }
}

void Report::write_json(std::ostream& out) const {
  out << "[";
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    out << (j ? ",\n " : "\n ") << "{";
    for (std::size_t i = 0; i < columns_.size(); ++i) {
      const std::string& cell = rows_[j][i];
      // JSON has no literal for non-finite numbers
      const bool as_string = quoted_[i] || cell == "nan" || cell == "inf" || cell == "-inf";
      out << (i ? ", " : "") << json_string(columns_[i]) << ": "
          << (as_string ? json_string(cell) : cell);
    }
    out << "}";
  }
  out << (rows_.empty() ? "]\n" : "\n]\n");
}

}  // namespace qgraph::cli
