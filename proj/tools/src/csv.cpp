#include "csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace credeq::cli {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render_csv(const ResultTable& table) {
  std::string out;
  for (const auto& [k, v] : table.meta) out += "# " + k + ": " + v + "\n";
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out += ",";
    out += table.header[i];
  }
  out += "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::logic_error("render_csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      if (std::holds_alternative<double>(row[i]))
        out += format_double(std::get<double>(row[i]));
      else
        out += std::get<std::string>(row[i]);
    }
    out += "\n";
  }
  return out;
}

void write_csv(const ResultTable& table, const std::string& file) {
  const std::string text = render_csv(table);
  const std::string tmp = file + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error(tmp + ": cannot open for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw std::runtime_error(tmp + ": write failed");
  }
  if (std::rename(tmp.c_str(), file.c_str()) != 0)
    throw std::runtime_error(file + ": rename failed");
}

}  // namespace credeq::cli
