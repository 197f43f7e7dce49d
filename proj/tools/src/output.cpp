#include "output.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>

namespace nlrc::cli {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

CsvTable& CsvTable::cell(double x) { return cell(format_number(x)); }

CsvTable& CsvTable::cell(const std::string& s) {
  if (fields_ == columns_.size()) throw std::logic_error("CSV row has too many fields");
  if (fields_ > 0) body_ += ',';
  body_ += s;
  ++fields_;
  return *this;
}

void CsvTable::end_row() {
  if (fields_ != columns_.size()) throw std::logic_error("CSV row has too few fields");
  body_ += '\n';
  fields_ = 0;
  ++rows_;
}

void CsvTable::save(const std::filesystem::path& path) const {
  std::string text = "# ";
  for (std::size_t i = 0; i < columns_.size(); ++i) {
    if (i) text += ',';
    text += columns_[i];
  }
  text += '\n';
  text += body_;
  write_file(path, text);
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::filesystem::path sidecar_path(const std::filesystem::path& data) {
  std::filesystem::path p = data;
  p.replace_extension(".meta.json");
  return p;
}

}  // namespace nlrc::cli
