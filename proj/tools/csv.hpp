#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace netcast::cli {

/// Shortest round-trip decimal form, independent of the C locale.
/// nan/inf print as "nan", "inf", "-inf".
std::string format_number(double v);
std::string format_number(long long v);

/// Writes "# schema: <name> v<version>", the column header, then rows.
class CsvWriter {
public:
  CsvWriter(const std::filesystem::path& path, std::string_view schema, int version,
            std::vector<std::string> columns);

  using Cell = std::string;
  void row(const std::vector<Cell>& cells);
  std::size_t rows() const noexcept { return rows_; }
  const std::filesystem::path& path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t rows_ = 0;
};

/// Column-name to value table for reading our own CSVs back (tests, plots).
struct CsvTable {
  std::string schema;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

} // namespace netcast::cli
