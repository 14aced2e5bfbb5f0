#include "fpuq/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>

#include "fpuq/errors.hpp"

namespace fpuq {

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& os, const std::string& schema) : os_(os) {
  os_ << "# fpuq schema=" << schema << "\n";
}

void CsvWriter::config(const std::string& key, const std::string& value) {
  os_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::config(const std::string& key, double value) {
  os_ << "# " << key << "=" << format_real(value) << "\n";
}

void CsvWriter::config(const std::string& key, std::int64_t value) {
  os_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::columns(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) os_ << (i ? "," : "") << names[i];
  os_ << "\n";
}

void CsvWriter::row(const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    os_ << (i ? "," : "") << format_real(values[i]);
  os_ << "\n";
}

void CsvWriter::raw_row(const std::string& line) { os_ << line << "\n"; }

namespace {

std::vector<std::vector<double>> read_rows(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw ConfigError("csv: cannot parse cell '" + cell + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<double> read_vector_csv(std::istream& is) {
  std::vector<double> v;
  for (const auto& row : read_rows(is))
    for (double x : row) v.push_back(x);
  if (v.empty()) throw EmptyInput("csv: empty vector");
  return v;
}

Matrix read_matrix_csv(std::istream& is) {
  const auto rows = read_rows(is);
  if (rows.empty()) throw EmptyInput("csv: empty matrix");
  const std::size_t cols = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != cols) throw ShapeMismatch("csv: ragged matrix rows");
  Matrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

void write_vector_csv(std::ostream& os, std::span<const double> v) {
  for (double x : v) os << format_real(x) << "\n";
}

void write_matrix_csv(std::ostream& os, const Matrix& m) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = 0; j < m.cols; ++j) os << (j ? "," : "") << format_real(m.at(i, j));
    os << "\n";
  }
}

namespace {

constexpr char kMagic[4] = {'F', 'P', 'Q', 'M'};

template <typename T>
void put(std::ostream& os, T v) {
  // little-endian host assumed; documented in FORMATS.md
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& is) {
  T v;
  is.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!is) throw ConfigError("binary matrix: truncated stream");
  return v;
}

}  // namespace

void write_matrix_binary(std::ostream& os, const Matrix& m) {
  os.write(kMagic, 4);
  put<std::uint32_t>(os, 1);
  put<std::uint64_t>(os, m.rows);
  put<std::uint64_t>(os, m.cols);
  for (double x : m.data) put(os, x);
}

Matrix read_matrix_binary(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0)
    throw ConfigError("binary matrix: bad magic");
  const auto version = get<std::uint32_t>(is);
  if (version != 1) throw ConfigError("binary matrix: unsupported version");
  const auto rows = get<std::uint64_t>(is);
  const auto cols = get<std::uint64_t>(is);
  if (rows == 0 || cols == 0 || rows * cols > (std::uint64_t{1} << 32))
    throw ConfigError("binary matrix: implausible shape");
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (auto& x : m.data) x = get<double>(is);
  return m;
}

std::map<std::string, std::string> read_config_file(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(is, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!key.empty()) out[key] = value;
  }
  return out;
}

}  // namespace fpuq
