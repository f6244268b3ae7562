#include "csv_output.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace emcel::cli {

namespace {

std::size_t field_count(std::string_view line) {
  std::size_t n = 1;
  for (char c : line) n += (c == ',');
  return n;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void CsvTable::write(std::ostream& os) const {
  for (const auto& [key, value] : metadata) os << "# " << key << ": " << value << '\n';
  for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
  for (const auto& [key, value] : summary) os << "# " << key << ": " << value << '\n';
}

CheckResult check_csv(std::istream& is) {
  CheckResult result;
  std::string line;
  std::string config;
  std::string hash;
  std::size_t columns = 0;
  bool in_summary = false;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      result.message = "line " + std::to_string(line_no) + ": CRLF line ending";
      return result;
    }
    if (line.rfind("# ", 0) == 0) {
      if (columns > 0 && result.rows > 0) in_summary = true;
      const auto colon = line.find(": ", 2);
      if (colon == std::string::npos) continue;
      const std::string key = line.substr(2, colon - 2);
      const std::string value = line.substr(colon + 2);
      if (columns == 0 && key == "config") config = value;
      if (columns == 0 && key == "config_hash") hash = value;
      continue;
    }
    if (columns == 0) {
      columns = field_count(line);
      continue;
    }
    if (in_summary) {
      result.message = "line " + std::to_string(line_no) + ": data after the summary lines";
      return result;
    }
    if (field_count(line) != columns) {
      result.message = "line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields";
      return result;
    }
    ++result.rows;
  }
  if (config.empty() || hash.empty()) {
    result.message = "missing config or config_hash header";
    return result;
  }
  if (hex64(fnv1a64(config)) != hash) {
    result.message = "config_hash does not match the echoed config";
    return result;
  }
  if (columns == 0) {
    result.message = "missing column header";
    return result;
  }
  result.ok = true;
  result.message = "ok";
  return result;
}

}  // namespace emcel::cli
