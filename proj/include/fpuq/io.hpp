#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "fpuq/kernels.hpp"

namespace fpuq {

/// Full round-trip decimal formatting ("%.17g", '.' separator).
std::string format_real(double x);

/// Writes the standard artifact header: schema id plus the full configuration, one
/// "# key=value" line per entry in insertion order. No timestamps, so identical runs
/// produce identical bytes.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::string& schema);
  void config(const std::string& key, const std::string& value);
  void config(const std::string& key, double value);
  void config(const std::string& key, std::int64_t value);
  /// Emits the column-name row; call after all config lines.
  void columns(const std::vector<std::string>& names);
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

 private:
  std::ostream& os_;
};

/// Vector/matrix CSV interchange: one value per cell, rows are matrix rows, no header.
std::vector<double> read_vector_csv(std::istream& is);
Matrix read_matrix_csv(std::istream& is);
void write_vector_csv(std::ostream& os, std::span<const double> v);
void write_matrix_csv(std::ostream& os, const Matrix& m);

/// Column-major binary layout: magic "FPQM", u32 version=1, u64 rows, u64 cols,
/// rows*cols little-endian IEEE doubles in column order. Vectors use cols=1.
void write_matrix_binary(std::ostream& os, const Matrix& m);
Matrix read_matrix_binary(std::istream& is);

/// Flat key=value experiment config ('#' comments, blank lines ignored).
std::map<std::string, std::string> read_config_file(std::istream& is);

}  // namespace fpuq
