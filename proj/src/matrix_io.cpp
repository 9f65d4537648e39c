#include "pwig/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "pwig/error.hpp"
#include "pwig/report.hpp"

namespace pwig {

namespace {

constexpr const char* kBanner = "%%MatrixMarket matrix coordinate integer symmetric";

void write_metadata(std::ostream& out, const char* prefix, const Metadata& metadata) {
  for (const auto& [k, v] : metadata) out << prefix << k << ": " << v << "\n";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

void parse_metadata_line(const std::string& body, Metadata& metadata) {
  const auto colon = body.find(':');
  if (colon == std::string::npos) return;
  metadata.emplace_back(trim(body.substr(0, colon)), trim(body.substr(colon + 1)));
}

}  // namespace

void write_matrix_market(std::ostream& out, const ScaledSignMatrix& matrix, const Metadata& metadata) {
  const std::size_t n = matrix.order();
  out << kBanner << "\n";
  write_metadata(out, "% ", metadata);
  out << "% scale: " << format_real(matrix.scale()) << "\n";
  out << n << " " << n << " " << triangle_size(n) << "\n";
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = j; i < n; ++i) out << i + 1 << " " << j + 1 << " " << matrix.sign(i, j) << "\n";
}

void write_dense_csv(std::ostream& out, const ScaledSignMatrix& matrix, const Metadata& metadata) {
  write_metadata(out, "# ", metadata);
  out << "# scale: " << format_real(matrix.scale()) << "\n";
  const std::size_t n = matrix.order();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ",";
      out << format_real(matrix.value(i, j));
    }
    out << "\n";
  }
}

MatrixFile read_matrix_market(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty matrix file");
  if (trim(line) != kBanner) throw FormatError("expected banner '" + std::string(kBanner) + "'");

  MatrixFile file;
  std::size_t rows = 0, cols = 0, entries = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '%') {
      parse_metadata_line(line.substr(1), file.metadata);
      continue;
    }
    std::istringstream size_line(line);
    if (!(size_line >> rows >> cols >> entries)) throw FormatError("malformed size line: " + line);
    break;
  }
  if (rows == 0 || rows != cols) throw FormatError("matrix must be square and nonempty");
  if (entries != triangle_size(rows))
    throw FormatError("expected " + std::to_string(triangle_size(rows)) + " stored entries, header says " +
                      std::to_string(entries));

  const std::size_t n = rows;
  std::vector<std::int8_t> dense(n * n, 0);
  for (std::size_t e = 0; e < entries; ++e) {
    if (!std::getline(in, line)) throw FormatError("truncated matrix file: " + std::to_string(e) + " of " +
                                                    std::to_string(entries) + " entries read");
    std::istringstream entry(line);
    std::size_t i = 0, j = 0;
    long value = 0;
    if (!(entry >> i >> j >> value)) throw FormatError("malformed entry line: " + line);
    if (i < 1 || j < 1 || i > n || j > n || i < j) throw FormatError("entry outside the lower triangle: " + line);
    if (value != 1 && value != -1) throw FormatError("entry is not +1 or -1: " + line);
    std::int8_t& cell = dense[(i - 1) * n + (j - 1)];
    if (cell != 0) throw FormatError("duplicate entry: " + line);
    cell = static_cast<std::int8_t>(value);
    dense[(j - 1) * n + (i - 1)] = static_cast<std::int8_t>(value);
  }
  file.matrix = ScaledSignMatrix(n, std::move(dense));
  return file;
}

void write_spectrum(std::ostream& out, const Spectrum& spectrum, const Metadata& metadata) {
  write_metadata(out, "# ", metadata);
  for (double v : spectrum.eigenvalues) out << format_real(v) << "\n";
}

Spectrum read_spectrum(std::istream& in) {
  Spectrum s;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &used);
    } catch (const std::exception&) {
      throw FormatError("malformed eigenvalue line: " + line);
    }
    if (used != t.size() || !std::isfinite(v)) throw FormatError("malformed eigenvalue line: " + line);
    s.eigenvalues.push_back(v);
  }
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

}  // namespace pwig
