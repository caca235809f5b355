#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qgraph::cli {

/// Shortest form that still carries 17 significant digits; locale independent.
std::string format_double(double v);

/// A table of rows sharing one header, written as CSV or as a JSON array of
/// objects. Cells are pre-formatted; `quoted` marks the string columns.
class Report {
 public:
  explicit Report(std::vector<std::string> columns, std::vector<bool> quoted = {});

  Report& row(std::vector<std::string> cells);
  void write_csv(std::ostream& out) const;
  void write_json(std::ostream& out) const;

 private:
  std::vector<std::string> columns_;
  std::vector<bool> quoted_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace qgraph::cli
