#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cradle::cli {

inline constexpr const char* kToolVersion = "0.1.0";

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// `precision` significant digits, locale-independent.
std::string format_real(double v, int precision);

/// Shortest text that parses back to v.
std::string format_shortest(double v);

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Builds a CSV document: one '#' metadata line, a header, then rows.
class CsvDocument {
public:
  CsvDocument(const Metadata& meta, const std::vector<std::string>& columns, int precision);

  CsvDocument& integer(std::size_t v);
  CsvDocument& real(double v);
  void end_row();

  const std::string& text() const noexcept { return text_; }

private:
  void separator();

  std::string text_;
  int precision_;
  bool row_open_ = false;
};

/// Writes through a sibling temporary file and a rename; on failure nothing
/// is left at `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace cradle::cli
