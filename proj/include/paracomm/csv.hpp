#pragma once

// Deterministic CSV emission: fixed %.12g float formatting, LF line endings,
// so equal inputs give byte-identical files.

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace paracomm {

inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<std::string>& cells) {
    if (cells.size() != header_.size())
      throw std::invalid_argument("CsvWriter: row width mismatch");
    rows_.push_back(cells);
  }

  std::string text() const {
    std::string out = join(header_);
    for (const auto& r : rows_) out += join(r);
    return out;
  }

  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("CsvWriter: cannot open '" + path + "'");
    f << text();
  }

  std::size_t n_rows() const { return rows_.size(); }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    line += '\n';
    return line;
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace paracomm
