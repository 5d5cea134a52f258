#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace omni::cli {

/// 9 significant digits, '.' decimal, no locale; -0 prints as 0.
[[nodiscard]] std::string format_number(double v);

/// Builds a CSV document in memory. Cells are never quoted, so they must not
/// contain commas or newlines.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& add(std::vector<std::string> row);
  [[nodiscard]] const std::vector<std::string>& header() const noexcept { return header_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_.size(); }
  [[nodiscard]] std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Writes `content` byte for byte ('\n' line ends on every platform).
void write_file(const std::filesystem::path& path, std::string_view content);
[[nodiscard]] std::string read_file(const std::filesystem::path& path);

/// 64-bit FNV-1a.
[[nodiscard]] std::uint64_t fnv1a(std::string_view bytes) noexcept;
[[nodiscard]] std::string hex64(std::uint64_t v);

}  // namespace omni::cli
