#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dbarrier/types.hpp"

namespace testsupport {

// Rows of a comma-separated file under tests/data, skipping '#' lines.
inline std::vector<std::vector<double>> read_csv(const std::string& name) {
  std::ifstream in(std::string(DBARRIER_TEST_DATA) + "/" + name);
  if (!in) throw std::runtime_error("missing test data " + name);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

inline double rel_err(dbarrier::cplx got, dbarrier::cplx want) {
  const double s = std::abs(want);
  return s > 0.0 ? std::abs(got - want) / s : std::abs(got);
}

}  // namespace testsupport
