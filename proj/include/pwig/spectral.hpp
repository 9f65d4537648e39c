#pragma once

// Eigenvalues, trace moments, the semicircle law and Kolmogorov distance.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pwig/matgen.hpp"

namespace pwig {

struct Spectrum {
  std::vector<double> eigenvalues;  // ascending

  std::size_t size() const { return eigenvalues.size(); }
};

// Householder tridiagonalization followed by implicit-shift QL. Throws
// ConvergenceError if the QL sweeps exceed 30 N iterations in total.
Spectrum eigenvalues_sym(const ScaledSignMatrix& matrix);
// Same for an arbitrary real symmetric row-major matrix (only the lower
// triangle is read).
Spectrum eigenvalues_sym(std::vector<double> dense, std::size_t order);

// Fraction of eigenvalues <= x.
double empirical_cdf(const Spectrum& spectrum, double x);

// (1/N) Tr(A^l) for the scaled matrix, 1 <= l <= 20. Integer sign-matrix
// powers are used while N^ceil(l/2) and N^l stay inside 63 and 126 bits;
// otherwise the value falls back to (1/N) sum lambda_i^l in double precision.
double moment_trace(const ScaledSignMatrix& matrix, unsigned l);

__extension__ using Int128 = __int128;

// Tr(S^l) of the unscaled sign matrix for l = 1..l_max (index l - 1), empty
// where the value does not fit the integer range above.
std::vector<std::optional<Int128>> trace_powers_exact(const ScaledSignMatrix& matrix, unsigned l_max);
inline std::optional<Int128> trace_power_exact(const ScaledSignMatrix& matrix, unsigned l) {
  return trace_powers_exact(matrix, l).back();
}

// beta_1..beta_lmax, sharing the integer powers between orders.
std::vector<double> trace_moments(const ScaledSignMatrix& matrix, unsigned l_max);

double semicircle_cdf(double x);
double semicircle_pdf(double x);
// 0 for odd l, Catalan(l/2) / 2^l for even l.
double semicircle_moment(unsigned l);

struct KsReport {
  double distance = 0.0;
  double argmax = 0.0;  // eigenvalue at which the supremum is attained
  std::optional<double> threshold;
  std::optional<bool> pass;
};

// Exact sup |F_N - F_sc| over the jump points of the empirical CDF. The input
// order is irrelevant. When r is given the threshold is 1/r.
KsReport kolmogorov_distance(std::span<const double> eigenvalues, std::optional<unsigned> r = std::nullopt);
inline KsReport kolmogorov_distance(const Spectrum& spectrum, std::optional<unsigned> r = std::nullopt) {
  return kolmogorov_distance(spectrum.eigenvalues, r);
}

// Fixed-bin density histogram over [lo, hi].
struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> density;  // count / (total * width); values outside [lo, hi] are not binned
  std::size_t total = 0;
  std::size_t outside = 0;

  double bin_width() const { return (hi - lo) / static_cast<double>(density.size()); }
  double mass() const;
};

Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins);

}  // namespace pwig
