#include "fwm/emit.hpp"

#include <cstdio>
#include <stdexcept>

#include "fwm/core.hpp"

namespace fwm {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw SolverError("cannot open output file: " + path);
  emit(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  emit(cells);
  ++rows_;
}

void CsvWriter::close() {
  out_.flush();
  if (!out_) throw SolverError("write failed: " + path_);
  out_.close();
}

void CsvWriter::emit(const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n") != std::string::npos) {
      out_ << '"';
      for (char ch : c) {
        if (ch == '"') out_ << '"';
        out_ << ch;
      }
      out_ << '"';
    } else {
      out_ << c;
    }
  }
  out_ << '\n';
}

}  // namespace fwm
