#include "pwig/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "pwig/error.hpp"
#include "pwig/prng.hpp"

namespace pwig {

namespace {

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  double out = 1.0;
  for (std::size_t i = 0; i < k; ++i) out = out * static_cast<double>(n - i) / static_cast<double>(i + 1);
  return out;
}

// Advances `tuple` to the next r-subset of [0, n) in lexicographic order.
bool next_combination(std::vector<std::size_t>& tuple, std::size_t n) {
  const std::size_t r = tuple.size();
  for (std::size_t i = r; i-- > 0;) {
    if (tuple[i] < n - r + i) {
      ++tuple[i];
      for (std::size_t j = i + 1; j < r; ++j) tuple[j] = tuple[j - 1] + 1;
      return true;
    }
  }
  return false;
}

struct TupleStats {
  std::uint64_t min_count;
  std::uint64_t max_count;
};

TupleStats count_patterns(std::span<const BitRow> codewords, const std::vector<std::size_t>& tuple,
                          std::vector<std::uint64_t>& counts) {
  std::fill(counts.begin(), counts.end(), 0);
  for (const BitRow& word : codewords) {
    std::size_t pattern = 0;
    for (std::size_t j = 0; j < tuple.size(); ++j) pattern |= std::size_t{word[tuple[j]]} << j;
    ++counts[pattern];
  }
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  return {*lo, *hi};
}

double sample_variance(std::span<const double> values, double mean) {
  if (values.size() < 2) return 0.0;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(values.size() - 1);
}

Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

Int128 gcd128(Int128 a, Int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    Int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

IndependenceReport test_r_independence(std::span<const BitRow> codewords, std::size_t n, unsigned r,
                                       const IndependenceOptions& options) {
  if (r < 1 || r > n) throw ParameterError("independence order must lie in [1, n]");
  if (r > 20) throw ParameterError("independence order above 20 is not supported");
  if (codewords.empty()) throw ParameterError("no codewords to test");
  for (const BitRow& word : codewords)
    if (word.size() < n) throw ParameterError("codeword shorter than the tested length");

  IndependenceReport report;
  report.mode = options.mode;
  report.r = r;
  report.length = n;
  report.codewords = codewords.size();
  const std::size_t patterns = std::size_t{1} << r;
  const double expected = 1.0 / static_cast<double>(patterns);
  const double total = static_cast<double>(codewords.size());
  std::vector<std::uint64_t> counts(patterns);
  bool uniform = true;

  auto record = [&](const std::vector<std::size_t>& tuple, const TupleStats& stats) {
    ++report.tuples_checked;
    if (stats.min_count != stats.max_count) uniform = false;
    const double dev = std::max(std::abs(stats.max_count / total - expected), std::abs(stats.min_count / total - expected));
    if (report.worst_tuple.empty() || dev > report.worst_deviation) {
      report.worst_deviation = dev;
      report.worst_tuple = tuple;
    }
  };

  if (options.mode == IndependenceMode::exhaustive) {
    const double cost = total * binomial(n, r) * static_cast<double>(patterns);
    if (cost > options.exhaustive_budget)
      throw ParameterError("exhaustive independence test would cost " + std::to_string(cost) +
                           " operations, above the budget; use sampled mode");
    std::vector<std::size_t> tuple(r);
    std::iota(tuple.begin(), tuple.end(), std::size_t{0});
    do {
      record(tuple, count_patterns(codewords, tuple, counts));
    } while (next_combination(tuple, n));
    report.tolerance = 0.0;
    report.pass = uniform;
    if (uniform) report.worst_deviation = 0.0;
    return report;
  }

  CounterRng rng(options.seed);
  std::vector<std::size_t> tuple;
  for (std::uint64_t s = 0; s < options.sampled_tuples; ++s) {
    tuple.clear();
    while (tuple.size() < r) {
      const std::size_t pos = static_cast<std::size_t>(rng() % n);
      if (std::find(tuple.begin(), tuple.end(), pos) == tuple.end()) tuple.push_back(pos);
    }
    std::sort(tuple.begin(), tuple.end());
    record(tuple, count_patterns(codewords, tuple, counts));
  }
  report.tolerance = 5.0 * std::sqrt(expected * (1.0 - expected) / total);
  report.pass = report.worst_deviation <= report.tolerance;
  return report;
}

IndependenceReport test_r_independence(const BchCode& code, unsigned r, const IndependenceOptions& options) {
  std::vector<BitRow> words;
  for (const DualCodeword& w : enumerate_dual_codewords(code)) words.push_back(w.bits());
  return test_r_independence(words, code.n, r, options);
}

MomentReport test_moment_match(std::span<const ScaledSignMatrix> matrices, unsigned l_max,
                               std::optional<std::uint64_t> reference_seed) {
  if (matrices.empty()) throw ParameterError("moment test needs at least one matrix");
  const std::size_t order = matrices.front().order();
  for (const auto& m : matrices)
    if (m.order() != order) throw ParameterError("all matrices in a moment test must share one order");

  MomentReport report;
  report.order = order;
  report.samples = matrices.size();
  report.beta2_identity = true;

  std::vector<std::vector<double>> per_l(l_max);
  for (const auto& m : matrices) {
    const auto moments = trace_moments(m, std::max(l_max, 2u));
    for (unsigned l = 0; l < l_max; ++l) per_l[l].push_back(moments[l]);
    const auto tr2 = trace_power_exact(m, 2);
    if (!tr2 || *tr2 != static_cast<Int128>(order * order)) report.beta2_identity = false;
  }

  std::vector<double> random_means(l_max, 0.0);
  if (reference_seed) {
    for (std::size_t s = 0; s < matrices.size(); ++s) {
      const auto moments = trace_moments(sample_random_wigner(order, derive_key(*reference_seed, s)), l_max);
      for (unsigned l = 0; l < l_max; ++l) random_means[l] += moments[l] / static_cast<double>(matrices.size());
    }
  }

  const double n = static_cast<double>(order);
  const double count = static_cast<double>(matrices.size());
  report.pass = report.beta2_identity;
  for (unsigned l = 1; l <= l_max; ++l) {
    const auto& values = per_l[l - 1];
    MomentRow row;
    row.l = l;
    row.mean = std::accumulate(values.begin(), values.end(), 0.0) / count;
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    row.min = *lo;
    row.max = *hi;
    // Rounding can push the mean of identical values a hair outside [min, max].
    row.mean = std::clamp(row.mean, row.min, row.max);
    const double var = sample_variance(values, row.mean);
    row.sample_std_error = std::sqrt(var / count);
    row.scaled_variance = var * n * n;
    row.reference = semicircle_moment(l);
    if (reference_seed) row.random_mean = random_means[l - 1];
    row.tolerance = 5.0 / (std::sqrt(std::numbers::pi) * n * std::sqrt(count));
    row.pass = std::abs(row.mean - row.reference) <= row.tolerance;
    report.pass = report.pass && row.pass;
    report.rows.push_back(row);
  }
  return report;
}

QuasiRandomReport quasirandom_check(const ScaledSignMatrix& matrix, const Spectrum* scaled_spectrum) {
  const std::size_t n = matrix.order();
  const double nd = static_cast<double>(n);
  QuasiRandomReport report;
  report.order = n;

  std::vector<double> adjacency(n * n);
  report.identity_ok = true;
  for (std::size_t i = 0; i < n * n; ++i) {
    const int q = matrix.signs()[i];
    const int t = (1 + q) / 2;
    adjacency[i] = t;
    report.edge_sum += t;
    report.sign_sum += q;
    if (2 * t - 1 != q) report.identity_ok = false;
  }
  const Spectrum t_spectrum = eigenvalues_sym(std::move(adjacency), n);
  const auto& t_eig = t_spectrum.eigenvalues;
  report.lambda1 = t_eig.back();
  report.lambda2 = n > 1 ? t_eig[n - 2] : 0.0;
  std::vector<double> magnitudes;
  for (double v : t_eig) magnitudes.push_back(std::abs(v));
  std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
  report.lambda2_magnitude = n > 1 ? magnitudes[1] : 0.0;

  const Spectrum a_spectrum = scaled_spectrum ? *scaled_spectrum : eigenvalues_sym(matrix);
  const double a_norm = std::max(std::abs(a_spectrum.eigenvalues.front()), std::abs(a_spectrum.eigenvalues.back()));
  report.q_norm = a_norm * 2.0 * std::sqrt(nd);

  const double root = std::sqrt(nd);
  report.lambda1_ok = std::abs(report.lambda1 - nd / 2.0) <= root;
  report.lambda2_ok = report.lambda2 <= root;
  report.sign_sum_ok = std::abs(static_cast<double>(report.sign_sum)) <= 2.0 * nd * root;
  report.spectral_norm_ok = report.q_norm <= 2.0 * root;
  report.pass = report.identity_ok && report.lambda1_ok && report.lambda2_ok && report.sign_sum_ok;
  return report;
}

Rational Rational::make(Int128 num, Int128 den) {
  if (den == 0) throw ParameterError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const Int128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {num, den};
}

Rational operator+(const Rational& a, const Rational& b) {
  const Int128 g = gcd128(a.den, b.den);
  return Rational::make(a.num * (b.den / g) + b.num * (a.den / g), a.den / g * b.den);
}

Rational operator-(const Rational& a, const Rational& b) { return a + Rational{-b.num, b.den}; }

Rational operator*(const Rational& a, const Rational& b) {
  const Int128 g1 = gcd128(a.num, b.den);
  const Int128 g2 = gcd128(b.num, a.den);
  const Int128 d1 = g1 ? g1 : 1;
  const Int128 d2 = g2 ? g2 : 1;
  return Rational::make((a.num / d1) * (b.num / d2), (a.den / d2) * (b.den / d1));
}

VarianceReport quadratic_form_variance(std::span<const ScaledSignMatrix> matrices, std::span<const double> x,
                                       bool exhaustive) {
  if (matrices.empty()) throw ParameterError("variance needs at least one matrix");
  const std::size_t n = matrices.front().order();
  if (x.size() != n) throw ParameterError("vector length must equal the matrix order");
  double norm2 = 0.0, fourth = 0.0;
  for (double v : x) {
    norm2 += v * v;
    fourth += v * v * v * v;
  }
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-12) throw ParameterError("x must be a unit vector");

  std::vector<double> xi;
  xi.reserve(matrices.size());
  for (const auto& m : matrices) {
    if (m.order() != n) throw ParameterError("all matrices must share one order");
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < n; ++j) row += m.sign(i, j) * x[j];
      acc += x[i] * row;
    }
    xi.push_back(acc * m.scale());
  }

  VarianceReport report;
  report.order = n;
  report.samples = xi.size();
  report.exhaustive = exhaustive;
  const double count = static_cast<double>(xi.size());
  const double mean = std::accumulate(xi.begin(), xi.end(), 0.0) / count;
  double ss = 0.0;
  for (double v : xi) ss += (v - mean) * (v - mean);
  report.estimate = exhaustive ? ss / count : (count > 1 ? ss / (count - 1) : 0.0);
  if (!exhaustive && count > 1) {
    // Standard error of the variance estimate from the spread of squared deviations.
    double dev = 0.0;
    for (double v : xi) {
      const double d = (v - mean) * (v - mean) - report.estimate;
      dev += d * d;
    }
    report.std_error = std::sqrt(dev / (count - 1) / count);
  }
  const double nd = static_cast<double>(n);
  report.fourth_power_sum = fourth;
  report.exact_reference = (2.0 - fourth) / (4.0 * nd);
  report.asymptotic_reference = 1.0 / (2.0 * nd);
  report.correction = report.exact_reference - report.asymptotic_reference;
  report.correction_flagged = report.correction != 0.0;
  return report;
}

Rational exact_quadratic_form_variance(std::span<const ScaledSignMatrix> ensemble,
                                       std::span<const Rational> squared_weights) {
  if (ensemble.empty()) throw ParameterError("empty ensemble");
  const std::size_t n = ensemble.front().order();
  if (squared_weights.size() != n) throw ParameterError("weight count must equal the matrix order");
  if (n > 8) throw ParameterError("exact variance supports orders up to 8");
  Rational weight_sum;
  for (const Rational& w : squared_weights) {
    if (w.num < 0) throw ParameterError("squared weights must be nonnegative");
    weight_sum = weight_sum + w;
  }
  if (!(weight_sum == Rational{1, 1})) throw ParameterError("squared weights must sum to 1");

  std::vector<std::pair<std::size_t, std::size_t>> positions;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) positions.emplace_back(i, j);
  const std::size_t p = positions.size();
  const Int128 count = static_cast<Int128>(ensemble.size());

  std::vector<Int128> sums(p, 0);
  std::vector<Int128> products(p * p, 0);
  for (const auto& m : ensemble) {
    if (m.order() != n) throw ParameterError("all matrices must share one order");
    for (std::size_t a = 0; a < p; ++a) {
      const int sa = m.sign(positions[a].first, positions[a].second);
      sums[a] += sa;
      for (std::size_t b = 0; b < p; ++b) products[a * p + b] += sa * m.sign(positions[b].first, positions[b].second);
    }
  }

  // count^2 Cov(s_a, s_b) = count * sum(s_a s_b) - sum(s_a) sum(s_b).
  Rational total;
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      const Int128 scaled_cov = count * products[a * p + b] - sums[a] * sums[b];
      if (a != b) {
        if (scaled_cov != 0)
          throw ParameterError("entries (" + std::to_string(positions[a].first) + "," +
                               std::to_string(positions[a].second) + ") and (" + std::to_string(positions[b].first) +
                               "," + std::to_string(positions[b].second) + ") are correlated");
        continue;
      }
      const auto [i, j] = positions[a];
      // Coefficient of s_ij in x^T S x, squared: x_i^4 on the diagonal, 4 x_i^2 x_j^2 off it.
      const Rational coeff2 =
          i == j ? squared_weights[i] * squared_weights[i] : Rational{4, 1} * squared_weights[i] * squared_weights[j];
      total = total + coeff2 * Rational::make(scaled_cov, count * count);
    }
  }
  return total * Rational::make(1, 4 * static_cast<Int128>(n));
}

std::vector<ScaledSignMatrix> enumerate_sign_matrices(std::size_t order) {
  if (order < 1 || order > 5) throw ParameterError("sign matrix enumeration supports orders 1..5");
  const std::size_t entries = triangle_size(order);
  std::vector<ScaledSignMatrix> out;
  out.reserve(std::size_t{1} << entries);
  std::vector<std::int8_t> signs(entries);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << entries); ++mask) {
    for (std::size_t e = 0; e < entries; ++e) signs[e] = ((mask >> e) & 1) ? -1 : 1;
    out.push_back(build_matrix(signs, order));
  }
  return out;
}

KsBoundReport summarize_ks_distances(std::size_t order, unsigned r, std::vector<double> distances) {
  if (r == 0) throw ParameterError("r must be positive");
  KsBoundReport report;
  report.order = order;
  report.r = r;
  report.threshold = 1.0 / r;
  report.claim_applicable = order >= kMinOrderForKsClaim;
  if (!distances.empty()) {
    const auto within = std::count_if(distances.begin(), distances.end(),
                                      [&](double d) { return d <= report.threshold; });
    report.fraction_within = static_cast<double>(within) / static_cast<double>(distances.size());
    const auto [lo, hi] = std::minmax_element(distances.begin(), distances.end());
    report.min_distance = *lo;
    report.max_distance = *hi;
    report.mean_distance = std::accumulate(distances.begin(), distances.end(), 0.0) / static_cast<double>(distances.size());
  }
  report.distances = std::move(distances);
  return report;
}

KsBoundReport ks_bound_validation(const EnsembleParams& params, std::size_t sample_size, unsigned r,
                                  std::uint64_t seed) {
  if (sample_size == 0) throw ParameterError("sample size must be positive");
  const PseudoWignerEnsemble ensemble(params);
  std::vector<double> distances;
  for (std::size_t s = 0; s < sample_size; ++s) {
    const auto matrix = ensemble.sample(ensemble.random_message(seed, s));
    distances.push_back(kolmogorov_distance(eigenvalues_sym(matrix)).distance);
  }
  return summarize_ks_distances(params.order, r, std::move(distances));
}

KsBoundReport ks_bound_validation_random(std::size_t order, std::size_t sample_size, unsigned r, std::uint64_t seed) {
  if (sample_size == 0) throw ParameterError("sample size must be positive");
  std::vector<double> distances;
  for (std::size_t s = 0; s < sample_size; ++s) {
    const auto matrix = sample_random_wigner(order, derive_key(seed, s));
    distances.push_back(kolmogorov_distance(eigenvalues_sym(matrix)).distance);
  }
  return summarize_ks_distances(order, r, std::move(distances));
}

}  // namespace pwig
