#pragma once
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ebcm::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row);
};

/// 12 significant digits, as everywhere in the output files.
std::string cell(double v);
std::string cell(std::uint64_t v);
std::string cell(int v);

inline constexpr const char* kUndefined = "undefined";

/// Comma separated, header first, LF line endings.
void write_csv(std::ostream& os, const Table& t);
void write_csv(const std::filesystem::path& path, const Table& t);

} // namespace ebcm::cli
