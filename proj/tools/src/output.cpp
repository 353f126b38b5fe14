#include "adm/cli/output.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <stdexcept>

#ifndef ADM_VERSION_STRING
#define ADM_VERSION_STRING "0.0.0+unknown"
#endif

namespace adm::cli {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), columns_(columns.size()) {
  if (!out_) throw std::runtime_error("cannot write '" + path.string() + "'");
  for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(double x) {
  row_ += (filled_++ ? "," : "") + format_real(x);
  return *this;
}

CsvWriter& CsvWriter::cell(long long x) {
  row_ += (filled_++ ? "," : "") + std::to_string(x);
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_)
    throw std::logic_error("csv row with " + std::to_string(filled_) + " of " + std::to_string(columns_) + " cells");
  out_ << row_ << '\n';
  row_.clear();
  filled_ = 0;
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("error while writing '" + path_.string() + "'");
}

const char* version_string() { return ADM_VERSION_STRING; }

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buf;
}

}  // namespace adm::cli
