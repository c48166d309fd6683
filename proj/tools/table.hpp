#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dbarrier::cli {

/// A cell: empty, number, integer, text or flag.
using Value = std::variant<std::monostate, double, long long, std::string, bool>;

struct Table {
  std::string command;
  /// Full run configuration, in the order given; written as '#' comments in CSV.
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<std::string> notes;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;
};

/// Shortest representation that parses back to the same double.
std::string format_number(double v);

void write_csv(const Table& t, std::ostream& out);
/// {"command", "config", "notes", "columns", "rows": [{column: value}]}; non-finite numbers as strings.
void write_json(const Table& t, std::ostream& out);

}  // namespace dbarrier::cli
