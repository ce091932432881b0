#include "ebcm/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace ebcm::cli {

void Table::add(std::vector<std::string> row) {
  if (row.size() != header.size())
    throw std::logic_error("csv row width does not match the header");
  rows.push_back(std::move(row));
}

std::string cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string cell(std::uint64_t v) { return std::to_string(v); }
std::string cell(int v) { return std::to_string(v); }

namespace {
void write_row(std::ostream& os, const std::vector<std::string>& row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i)
      os << ',';
    os << row[i];
  }
  os << '\n';
}
} // namespace

void write_csv(std::ostream& os, const Table& t) {
  write_row(os, t.header);
  for (const auto& r : t.rows)
    write_row(os, r);
}

void write_csv(const std::filesystem::path& path, const Table& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os)
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_csv(os, t);
  if (!os)
    throw std::runtime_error("write failed: " + path.string());
}

} // namespace ebcm::cli
