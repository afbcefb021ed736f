#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace eepc {

using Cell = std::variant<double, std::int64_t, std::string>;

/// A rectangular result table with a metadata block. Column order is fixed
/// by the producer; rendering is byte-stable.
struct Table {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void set_meta(const std::string& key, const std::string& value);
  /// Throws std::invalid_argument if the row width differs from columns.
  void add_row(std::vector<Cell> row);
  std::size_t column_index(const std::string& name) const;
  double number(std::size_t row, const std::string& column) const;
};

/// Shortest decimal string that parses back to the same double.
std::string format_number(double value);

/// "# key=value" lines, a header row, then one line per row.
void write_csv(const Table& table, std::ostream& out);
/// {"metadata": {...}, "columns": [...], "rows": [[...], ...]}
void write_json(const Table& table, std::ostream& out);

std::string to_csv(const Table& table);
std::string to_json(const Table& table);

}  // namespace eepc
