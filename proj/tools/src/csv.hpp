#pragma once

#include <string>
#include <variant>
#include <vector>

namespace credeq::cli {

// Result tables are written as CSV with a '#'-prefixed metadata block, a
// header row, '.' decimal separator, 17 significant digits (round-trip exact
// for doubles), and LF line endings. Writes go to a temp file in the target
// directory and are renamed into place.
using Cell = std::variant<double, std::string>;

struct ResultTable {
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v);
std::string render_csv(const ResultTable& table);
void write_csv(const ResultTable& table, const std::string& file);

}  // namespace credeq::cli
