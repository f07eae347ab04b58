#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gprates {

/// Fixed numeric formatting for every artifact: 17 significant digits, '.' decimal.
std::string format_number(double value);

/// Writes ',' separated rows with LF endings.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void row_cells(const std::vector<std::string>& cells);

 private:
  std::ostream& out_;
};

}  // namespace gprates
