#include "output.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <system_error>

#include <unistd.h>

namespace cradle::cli {

std::string format_real(double v, int precision) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general,
                                 precision);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), res.ptr);
}

std::string format_shortest(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf.data(), res.ptr);
}

CsvDocument::CsvDocument(const Metadata& meta, const std::vector<std::string>& columns,
                         int precision)
    : precision_(precision) {
  text_ = "#";
  for (const auto& [k, v] : meta) text_ += " " + k + "=" + v;
  text_ += "\n";
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) text_ += ",";
    text_ += columns[i];
  }
  text_ += "\n";
}

void CsvDocument::separator() {
  if (row_open_) text_ += ",";
  row_open_ = true;
}

CsvDocument& CsvDocument::integer(std::size_t v) {
  separator();
  text_ += std::to_string(v);
  return *this;
}

CsvDocument& CsvDocument::real(double v) {
  separator();
  text_ += format_real(v, precision_);
  return *this;
}

void CsvDocument::end_row() {
  text_ += "\n";
  row_open_ = false;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path tmp =
      path.parent_path() / ("." + path.filename().string() + ".tmp-" + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ignored;
      fs::remove(tmp, ignored);
      throw IoError("write to " + tmp.string() + " failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(tmp, ignored);
    throw IoError("cannot move output into place at " + path.string() + ": " + ec.message());
  }
}

}  // namespace cradle::cli
