#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace dynoco {

/// Minimal CSV writer: UTF-8, LF line endings, header row first. Doubles are
/// written with 17 significant digits so they re-parse exactly.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(unsigned long long value);
  CsvWriter& cell(std::size_t value) { return cell(static_cast<unsigned long long>(value)); }
  CsvWriter& cell(std::string_view value);
  /// Empty field, used for not-applicable values.
  CsvWriter& blank();
  void end_row();

 private:
  void separator();

  std::ofstream out_;
  bool row_started_ = false;
};

/// Formats a double with 17 significant digits.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws ContractViolation if absent.
  [[nodiscard]] std::size_t column(std::string_view name) const;
};

/// Reads a comma-separated file without quoting support.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace dynoco
