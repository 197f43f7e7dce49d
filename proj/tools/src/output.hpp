#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace nlrc::cli {

/// Shortest round-trip decimal form.
std::string format_number(double x);

/// Buffers a CSV table with one commented header line (`# a,b,c`) and writes
/// it in one go, so a failed run never leaves a partial file behind.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);

  CsvTable& cell(double x);
  CsvTable& cell(const std::string& s);
  void end_row();

  const std::vector<std::string>& columns() const { return columns_; }
  std::size_t rows() const { return rows_; }
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> columns_;
  std::string body_;
  std::size_t rows_ = 0;
  std::size_t fields_ = 0;
};

/// Writes text to `path` via a temporary file and rename.
void write_file(const std::filesystem::path& path, const std::string& text);

/// `<stem>.meta.json` next to a data file.
std::filesystem::path sidecar_path(const std::filesystem::path& data);

}  // namespace nlrc::cli
