#pragma once

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "clasym/common.hpp"

namespace clasym {

/// Decimal with 17 significant digits for bit-faithful reimport.
inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Plot-ready CSV: header row, then numeric rows; the first column is
/// always the abscissa (t unless stated otherwise).
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& columns)
      : out_(path) {
    require(out_.good(), "cannot open CSV file " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out_ << ',';
      out_ << columns[i];
    }
    out_ << '\n';
  }

  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out_ << ',';
      out_ << format_number(values[i]);
    }
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

}  // namespace clasym
