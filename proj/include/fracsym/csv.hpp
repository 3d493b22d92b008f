#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "sampled.hpp"

namespace fracsym {

// Comma-separated, header first, 17 significant digits.
inline void write_csv(std::ostream& os, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  if (header.size() != columns.size()) throw DomainError("write_csv: header and columns differ in count");
  const std::size_t n = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != n) throw DomainError("write_csv: columns differ in length");
  }
  for (std::size_t j = 0; j < header.size(); ++j) os << (j ? "," : "") << header[j];
  os << '\n';
  char buf[40];
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", columns[j][i]);
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
}

inline void write_csv(const std::string& path, const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& columns) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(out, header, columns);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

inline CsvTable read_csv(std::istream& is, const std::string& where = "csv") {
  CsvTable t;
  std::string line;
  if (!std::getline(is, line)) throw UsageError(where + ": empty input");
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      t.header.push_back(cell);
    }
  }
  t.columns.resize(t.header.size());
  std::size_t row = 1;
  while (std::getline(is, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t j = 0;
    while (std::getline(ss, cell, ',')) {
      if (j >= t.header.size()) throw UsageError(where + ": too many fields on line " + std::to_string(row));
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw UsageError(where + ": bad number '" + cell + "' on line " + std::to_string(row));
      }
      while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\r')) ++used;
      if (used != cell.size()) throw UsageError(where + ": bad number '" + cell + "' on line " + std::to_string(row));
      t.columns[j++].push_back(v);
    }
    if (j != t.header.size()) throw UsageError(where + ": too few fields on line " + std::to_string(row));
  }
  return t;
}

inline CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return read_csv(in, path);
}

// Two-column (x, value) file with a header row.
inline SampledFunction read_sampled_csv(const std::string& path) {
  const auto t = read_csv(path);
  if (t.header.size() != 2) throw UsageError(path + ": expected two columns (x,value)");
  SampledFunction f{t.columns[0], t.columns[1], 1};
  try {
    validate(f);
  } catch (const DomainError& e) {
    throw UsageError(path + ": " + e.what());
  }
  return f;
}

}  // namespace fracsym
