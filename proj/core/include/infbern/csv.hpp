#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace infbern {

/// Shortest general-format rendering with 9 significant digits, independent
/// of the global locale. NaN prints as "NaN", infinities as "inf" / "-inf".
std::string format_number(double value);

/// Rectangular numeric table with a header row.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add_row(std::vector<double> row);
  std::string to_csv() const;
};

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace infbern
