#include "pwig/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>

#include "pwig/error.hpp"

namespace pwig {

namespace {

// Reduces the lower triangle of `a` to tridiagonal form. On return diag holds
// the diagonal and off[i] couples rows i and i+1.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& diag, std::vector<double>& off) {
  auto at = [&a, n](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  std::vector<double> e(n, 0.0);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    if (l == 0) {
      e[i] = at(i, l);
      continue;
    }
    double scale = 0.0;
    for (std::size_t k = 0; k <= l; ++k) scale += std::abs(at(i, k));
    if (scale == 0.0) {
      e[i] = at(i, l);
      continue;
    }
    double h = 0.0;
    for (std::size_t k = 0; k <= l; ++k) {
      at(i, k) /= scale;
      h += at(i, k) * at(i, k);
    }
    double f = at(i, l);
    double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    e[i] = scale * g;
    h -= f * g;
    at(i, l) = f - g;
    f = 0.0;
    for (std::size_t j = 0; j <= l; ++j) {
      g = 0.0;
      for (std::size_t k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
      for (std::size_t k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
      e[j] = g / h;
      f += e[j] * at(i, j);
    }
    const double hh = f / (h + h);
    for (std::size_t j = 0; j <= l; ++j) {
      f = at(i, j);
      g = e[j] - hh * f;
      e[j] = g;
      for (std::size_t k = 0; k <= j; ++k) at(j, k) -= f * e[k] + g * at(i, k);
    }
  }
  diag.resize(n);
  off.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) diag[i] = at(i, i);
  for (std::size_t i = 1; i < n; ++i) off[i - 1] = e[i];
}

// Eigenvalues of [[a, b], [b, c]], larger first, without cancellation in the
// smaller one (the scheme of LAPACK's dlae2).
std::pair<double, double> symmetric_2x2(double a, double b, double c) {
  const double sm = a + c;
  const double acmx = std::abs(a) > std::abs(c) ? a : c;
  const double acmn = std::abs(a) > std::abs(c) ? c : a;
  const double rt = std::hypot(a - c, 2.0 * b);
  if (sm == 0.0) return {0.5 * rt, -0.5 * rt};
  const double rt1 = sm > 0.0 ? 0.5 * (sm + rt) : 0.5 * (sm - rt);
  const double rt2 = (acmx / rt1) * acmn - (b / rt1) * b;
  return {rt1, rt2};
}

// Implicit-shift QL on a symmetric tridiagonal matrix; eigenvalues end up in d.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
  const std::size_t n = d.size();
  const std::size_t cap = 30 * n;
  std::size_t iterations = 0;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  // Off-diagonals below eps * ||T|| are dropped even next to zero diagonal
  // entries; the perturbation is of the same order as the Householder step.
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[i]) + std::abs(e[i]));
  const double floor = eps * norm;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd || std::abs(e[m]) <= floor) break;
      }
      if (m == l) break;
      if (m == l + 1) {
        std::tie(d[l], d[l + 1]) = symmetric_2x2(d[l], e[l], d[l + 1]);
        e[l] = 0.0;
        continue;
      }
      if (++iterations > cap)
        throw ConvergenceError("QL iteration exceeded " + std::to_string(cap) + " sweeps while deflating row " +
                               std::to_string(l) + " of " + std::to_string(n) +
                               "; residual off-diagonal = " + std::to_string(e[l]));
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

using Int64Matrix = std::vector<std::int64_t>;

Int64Matrix multiply(const Int64Matrix& a, const Int64Matrix& b, std::size_t n) {
  Int64Matrix out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t* row = &out[i * n];
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t aik = a[i * n + k];
      if (aik == 0) continue;
      const std::int64_t* brow = &b[k * n];
      for (std::size_t j = 0; j < n; ++j) row[j] += aik * brow[j];
    }
  }
  return out;
}

}  // namespace

Spectrum eigenvalues_sym(std::vector<double> dense, std::size_t order) {
  if (dense.size() != order * order) throw ParameterError("dense matrix has wrong size");
  Spectrum out;
  if (order == 0) return out;
  std::vector<double> diag, off;
  tridiagonalize(dense, order, diag, off);
  tridiagonal_ql(diag, off);
  std::sort(diag.begin(), diag.end());
  out.eigenvalues = std::move(diag);
  return out;
}

Spectrum eigenvalues_sym(const ScaledSignMatrix& matrix) {
  // Solve on the integer signs, where small cases come out exact, then scale.
  const auto signs = matrix.signs();
  Spectrum out = eigenvalues_sym(std::vector<double>(signs.begin(), signs.end()), matrix.order());
  const double scale = matrix.scale();
  for (double& v : out.eigenvalues) v *= scale;
  return out;
}

double empirical_cdf(const Spectrum& spectrum, double x) {
  if (spectrum.eigenvalues.empty()) return 0.0;
  const auto it = std::upper_bound(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), x);
  return static_cast<double>(it - spectrum.eigenvalues.begin()) / static_cast<double>(spectrum.size());
}

std::vector<std::optional<Int128>> trace_powers_exact(const ScaledSignMatrix& matrix, unsigned l_max) {
  const std::size_t n = matrix.order();
  std::vector<std::optional<Int128>> out(l_max);
  if (l_max == 0) return out;
  const double log2n = std::log2(static_cast<double>(n));

  // powers[k] = S^k; |(S^k)_ij| <= N^(k-1) and |Tr S^l| <= N^l.
  std::vector<Int64Matrix> powers(1);
  powers[0].assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) powers[0][i * n + i] = 1;
  const unsigned half = (l_max + 1) / 2;
  for (unsigned k = 1; k <= half; ++k) {
    if (k * log2n > 62.0) break;
    if (k == 1) {
      Int64Matrix s(n * n);
      for (std::size_t i = 0; i < n * n; ++i) s[i] = matrix.signs()[i];
      powers.push_back(std::move(s));
    } else {
      powers.push_back(multiply(powers[k - 1], powers[1], n));
    }
  }
  for (unsigned l = 1; l <= l_max; ++l) {
    const unsigned b = l / 2;
    const unsigned a = l - b;
    if (a >= powers.size() || l * log2n > 125.0) continue;
    // Tr(S^a S^b) = sum_ij (S^a)_ij (S^b)_ji, and S^b is symmetric.
    Int128 trace = 0;
    const Int64Matrix& pa = powers[a];
    const Int64Matrix& pb = powers[b];
    for (std::size_t i = 0; i < n * n; ++i) trace += static_cast<Int128>(pa[i]) * pb[i];
    out[l - 1] = trace;
  }
  return out;
}

std::vector<double> trace_moments(const ScaledSignMatrix& matrix, unsigned l_max) {
  if (l_max < 1 || l_max > 20) throw ParameterError("moment order must lie in [1, 20], got " + std::to_string(l_max));
  const std::size_t n = matrix.order();
  const auto exact = trace_powers_exact(matrix, l_max);
  std::vector<double> out(l_max);
  std::optional<Spectrum> spectrum;
  for (unsigned l = 1; l <= l_max; ++l) {
    if (exact[l - 1]) {
      // beta_l = Tr(S^l) / (N 2^l N^(l/2)); the even part of the power is exact.
      long double denom = std::ldexp(1.0L, static_cast<int>(l)) * static_cast<long double>(n);
      for (unsigned k = 0; k < l / 2; ++k) denom *= static_cast<long double>(n);
      if (l % 2) denom *= std::sqrt(static_cast<long double>(n));
      out[l - 1] = static_cast<double>(static_cast<long double>(*exact[l - 1]) / denom);
      continue;
    }
    if (!spectrum) spectrum = eigenvalues_sym(matrix);
    long double sum = 0.0L;
    for (double lambda : spectrum->eigenvalues) sum += std::pow(static_cast<long double>(lambda), static_cast<int>(l));
    out[l - 1] = static_cast<double>(sum / static_cast<long double>(n));
  }
  return out;
}

double moment_trace(const ScaledSignMatrix& matrix, unsigned l) {
  if (l < 1 || l > 20) throw ParameterError("moment order must lie in [1, 20], got " + std::to_string(l));
  return trace_moments(matrix, l).back();
}

double semicircle_cdf(double x) {
  if (x < -1.0) return 0.0;
  if (x > 1.0) return 1.0;
  return 0.5 + (x * std::sqrt(1.0 - x * x) + std::asin(x)) / std::numbers::pi;
}

double semicircle_pdf(double x) {
  if (x < -1.0 || x > 1.0) return 0.0;
  return 2.0 / std::numbers::pi * std::sqrt(1.0 - x * x);
}

double semicircle_moment(unsigned l) {
  if (l % 2) return 0.0;
  const unsigned k = l / 2;
  // Catalan(k) / 4^k, built incrementally: C(j+1)/C(j) = 2(2j+1)/(j+2).
  double value = 1.0;
  for (unsigned j = 0; j < k; ++j) value *= 2.0 * (2.0 * j + 1.0) / (j + 2.0) / 4.0;
  return value;
}

KsReport kolmogorov_distance(std::span<const double> eigenvalues, std::optional<unsigned> r) {
  std::vector<double> sorted(eigenvalues.begin(), eigenvalues.end());
  std::sort(sorted.begin(), sorted.end());
  KsReport report;
  const double n = static_cast<double>(sorted.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = semicircle_cdf(sorted[i]);
    const double gap = std::max(std::abs((i + 1) / n - f), std::abs(i / n - f));
    if (gap > report.distance) {
      report.distance = gap;
      report.argmax = sorted[i];
    }
  }
  if (r) {
    if (*r == 0) throw ParameterError("r must be positive");
    report.threshold = 1.0 / *r;
    report.pass = report.distance <= *report.threshold;
  }
  return report;
}

double Histogram::mass() const {
  double sum = 0.0;
  for (double d : density) sum += d * bin_width();
  return sum;
}

Histogram make_histogram(std::span<const double> values, double lo, double hi, std::size_t bins) {
  if (bins == 0 || !(hi > lo)) throw ParameterError("histogram needs bins > 0 and hi > lo");
  Histogram h;
  h.lo = lo;
  h.hi = hi;
  h.total = values.size();
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double v : values) {
    if (v < lo || v > hi) {
      ++h.outside;
      continue;
    }
    std::size_t bin = static_cast<std::size_t>((v - lo) / width);
    counts[std::min(bin, bins - 1)] += 1;
  }
  h.density.resize(bins);
  for (std::size_t i = 0; i < bins; ++i)
    h.density[i] = h.total ? static_cast<double>(counts[i]) / (static_cast<double>(h.total) * width) : 0.0;
  return h;
}

}  // namespace pwig
