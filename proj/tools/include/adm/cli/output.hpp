#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace adm::cli {

/// 17 significant digits, lowercase scientific; negative zero printed as zero.
std::string format_real(double x);

/// Comma-separated table with a header row, LF line endings.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns);

  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  void end_row();
  void close();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
  std::string row_;
};

/// Version string baked in at configure time, e.g. "0.1.0+g1a2b3c4".
const char* version_string();

/// UTC ISO-8601 timestamp for run metadata.
std::string utc_timestamp();

}  // namespace adm::cli
