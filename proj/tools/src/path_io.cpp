#include "path_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace credeq::cli {

ResultTable path_to_table(const DynamicEconomy& econ,
                          const EquilibriumPath& path) {
  const int m = static_cast<int>(econ.agents.size());
  ResultTable t;
  t.meta.emplace_back("hypothesis", path.hypothesis);
  t.meta.emplace_back("horizon", std::to_string(path.T));
  t.meta.emplace_back("hypo_n", std::to_string(path.hypo_n));
  t.meta.emplace_back("hypo_h", std::to_string(path.hypo_h));
  t.header = {"t", "R", "Y"};
  for (int i = 0; i < m; ++i) {
    const std::string id = std::to_string(econ.agents[i].id);
    t.header.push_back("k_" + id);
    t.header.push_back("b_" + id);
    t.header.push_back("c_" + id);
    t.header.push_back("s_" + id);
  }
  for (int date = 0; date <= path.T + 1; ++date) {
    std::vector<Cell> row;
    row.emplace_back(static_cast<double>(date));
    row.emplace_back(date >= 1 ? path.R[date] : 0.0);
    row.emplace_back(date >= 1 && date <= path.T ? path.Y[date] : 0.0);
    for (int i = 0; i < m; ++i) {
      const auto& p = path.agents[i];
      if (date <= path.T) {
        row.emplace_back(p.k[date]);
        row.emplace_back(p.b[date]);
        row.emplace_back(p.c[date]);
        row.emplace_back(p.s[date]);
      } else {
        for (int j = 0; j < 4; ++j) row.emplace_back(0.0);
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

EquilibriumPath table_to_path(const DynamicEconomy& econ,
                              const std::string& csv_text) {
  const int m = static_cast<int>(econ.agents.size());
  EquilibriumPath path;
  std::istringstream in(csv_text);
  std::string line;
  bool header_seen = false;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find(": ");
      if (pos != std::string::npos) {
        const std::string key = line.substr(2, pos - 2);
        const std::string val = line.substr(pos + 2);
        if (key == "hypothesis") path.hypothesis = val;
        if (key == "hypo_n") path.hypo_n = std::atoi(val.c_str());
        if (key == "hypo_h") path.hypo_h = std::atoi(val.c_str());
      }
      continue;
    }
    if (!header_seen) {
      const std::size_t expect = 3 + 4 * static_cast<std::size_t>(m);
      std::size_t cols = 1;
      for (char ch : line)
        if (ch == ',') ++cols;
      if (cols != expect)
        throw std::runtime_error(
            "path CSV: header has " + std::to_string(cols) + " columns, expected " +
            std::to_string(expect) + " for this economy");
      header_seen = true;
      continue;
    }
    std::vector<double> vals;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str())
        throw std::runtime_error("path CSV: non-numeric cell '" + cell + "'");
      vals.push_back(v);
    }
    if (vals.size() != 3 + 4 * static_cast<std::size_t>(m))
      throw std::runtime_error("path CSV: row width mismatch");
    rows.push_back(std::move(vals));
  }
  if (rows.size() < 3) throw std::runtime_error("path CSV: too few rows");
  const int T = static_cast<int>(rows.size()) - 2;
  path.T = T;
  path.R.assign(T + 2, 0.0);
  path.Y.assign(T + 1, 0.0);
  path.agents.resize(m);
  for (int i = 0; i < m; ++i) {
    path.agents[i].id = econ.agents[i].id;
    path.agents[i].k.assign(T + 1, 0.0);
    path.agents[i].b.assign(T + 1, 0.0);
    path.agents[i].c.assign(T + 1, 0.0);
    path.agents[i].s.assign(T + 1, 0.0);
  }
  for (const auto& vals : rows) {
    const int date = static_cast<int>(vals[0]);
    if (date < 0 || date > T + 1)
      throw std::runtime_error("path CSV: date out of range");
    if (date >= 1) path.R[date] = vals[1];
    if (date >= 1 && date <= T) path.Y[date] = vals[2];
    if (date <= T) {
      for (int i = 0; i < m; ++i) {
        path.agents[i].k[date] = vals[3 + 4 * i];
        path.agents[i].b[date] = vals[4 + 4 * i];
        path.agents[i].c[date] = vals[5 + 4 * i];
        path.agents[i].s[date] = vals[6 + 4 * i];
      }
    }
  }
  path.R1 = path.R[1];
  return path;
}

EquilibriumPath load_path(const DynamicEconomy& econ, const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error(file + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return table_to_path(econ, ss.str());
}

}  // namespace credeq::cli
