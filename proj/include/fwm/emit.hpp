#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace fwm {

// Shortest round-trip decimal form; prints "nan" for undefined statistics.
std::string format_double(double v);

// Minimal CSV emitter: header row first, cells joined by commas, cells
// containing commas or quotes are quoted with doubled inner quotes.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  size_t rows_written() const { return rows_; }
  void close();

 private:
  void emit(const std::vector<std::string>& cells);
  std::ofstream out_;
  std::string path_;
  size_t rows_ = 0;
};

}  // namespace fwm
