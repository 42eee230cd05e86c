#include "csv.hpp"

#include "netcast/errors.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace netcast::cli {

std::string format_number(double v) {
  if (std::isnan(v))
    return "nan";
  if (std::isinf(v))
    return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string format_number(long long v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::string_view schema, int version,
                     std::vector<std::string> columns)
    : path_(path), out_(path, std::ios::binary), columns_(columns.size()) {
  if (!out_)
    throw IoError("cannot write " + path.string());
  out_ << "# schema: " << schema << " v" << version << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i)
    out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  if (cells.size() != columns_)
    throw DomainError("csv row has " + std::to_string(cells.size()) + " cells, expected " +
                      std::to_string(columns_));
  for (std::size_t i = 0; i < cells.size(); ++i)
    out_ << (i ? "," : "") << cells[i];
  out_ << '\n';
  if (!out_)
    throw IoError("write failed for " + path_.string());
  ++rows_;
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name)
      return i;
  throw DomainError("csv has no column '" + std::string(name) + "'");
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot read " + path.string());
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ','))
      cells.push_back(c);
    if (!line.empty() && line.back() == ',')
      cells.emplace_back();
    return cells;
  };
  CsvTable t;
  std::string line;
  if (std::getline(in, line) && line.rfind("# schema: ", 0) == 0)
    t.schema = line.substr(10);
  else
    throw IoError(path.string() + ": missing schema line");
  if (!std::getline(in, line))
    throw IoError(path.string() + ": missing header");
  t.columns = split(line);
  while (std::getline(in, line))
    if (!line.empty())
      t.rows.push_back(split(line));
  return t;
}

} // namespace netcast::cli
