#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace emcel::cli {

/// 64-bit FNV-1a hash.
std::uint64_t fnv1a64(std::string_view text);
std::string hex64(std::uint64_t v);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

/// CSV output with '#' metadata lines before the column header and '#'
/// summary lines after the data.
struct CsvTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> summary;

  void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void write(std::ostream& os) const;
};

struct CheckResult {
  bool ok = false;
  std::size_t rows = 0;
  std::string message;
};

/// Re-read an output file: the config hash must match the echoed config and
/// every data row must have as many fields as the column header.
CheckResult check_csv(std::istream& is);

}  // namespace emcel::cli
