#pragma once

// File formats for matrices and spectra.
//
// Matrix Market: "coordinate integer symmetric" with the +1/-1 signs of the
// lower triangle, column by column. Provenance is carried in "% key: value"
// comment lines; the "scale" entry records 1/(2 sqrt N).
//
// Dense CSV: N rows of N scaled values with 17 significant digits, preceded
// by "# key: value" lines.
//
// Spectrum: "# key: value" lines, then one eigenvalue per line (17 digits).

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "pwig/matgen.hpp"
#include "pwig/spectral.hpp"

namespace pwig {

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline constexpr const char* kToolVersion = "0.1.0";

void write_matrix_market(std::ostream& out, const ScaledSignMatrix& matrix, const Metadata& metadata);
void write_dense_csv(std::ostream& out, const ScaledSignMatrix& matrix, const Metadata& metadata);

struct MatrixFile {
  ScaledSignMatrix matrix;
  Metadata metadata;
};

// Throws FormatError on malformed, truncated or inconsistent input.
MatrixFile read_matrix_market(std::istream& in);

void write_spectrum(std::ostream& out, const Spectrum& spectrum, const Metadata& metadata);
Spectrum read_spectrum(std::istream& in);

}  // namespace pwig
