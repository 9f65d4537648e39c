#pragma once

// Verification suite for pseudo-Wigner ensembles.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pwig/codes.hpp"
#include "pwig/matgen.hpp"
#include "pwig/spectral.hpp"

namespace pwig {

using BitRow = std::vector<std::uint8_t>;

// ---------------------------------------------------------------------------
// r-wise independence of codeword coordinates

enum class IndependenceMode { exhaustive, sampled };

struct IndependenceOptions {
  IndependenceMode mode = IndependenceMode::exhaustive;
  // codewords * C(n, r) * 2^r must stay below this in exhaustive mode.
  double exhaustive_budget = 1e9;
  // Sampled mode: number of random position tuples and their seed.
  std::uint64_t sampled_tuples = 20000;
  std::uint64_t seed = 1;
};

struct IndependenceReport {
  IndependenceMode mode = IndependenceMode::exhaustive;
  unsigned r = 0;
  std::size_t length = 0;
  std::uint64_t codewords = 0;
  std::uint64_t tuples_checked = 0;
  // max over tuples and patterns of |pattern frequency - 2^-r|
  double worst_deviation = 0.0;
  std::vector<std::size_t> worst_tuple;
  double tolerance = 0.0;  // 0 in exhaustive mode
  bool pass = false;
};

// Exhaustive mode checks every r-subset of the n positions and passes only on
// exactly uniform pattern counts. Sampled mode draws random subsets and
// accepts deviations up to 5 binomial standard errors. Throws ParameterError
// when the exhaustive budget is exceeded.
IndependenceReport test_r_independence(std::span<const BitRow> codewords, std::size_t n, unsigned r,
                                       const IndependenceOptions& options = {});

// Enumerates the dual code of `code` and tests it.
IndependenceReport test_r_independence(const BchCode& code, unsigned r, const IndependenceOptions& options = {});

// ---------------------------------------------------------------------------
// Trace moments

struct MomentRow {
  unsigned l = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  double sample_std_error = 0.0;
  // Variance of N * beta_l across the sample (0 for a single matrix).
  double scaled_variance = 0.0;
  double reference = 0.0;  // semicircle moment
  std::optional<double> random_mean;
  // 5 / (sqrt(pi) N sqrt(samples)): the asymptotic fluctuation scale of beta_l.
  double tolerance = 0.0;
  bool pass = false;
};

struct MomentReport {
  std::size_t order = 0;
  std::size_t samples = 0;
  std::vector<MomentRow> rows;
  bool beta2_identity = false;  // every matrix has beta_2 == 1/4 exactly
  bool pass = false;
};

// beta_1..beta_lmax for every matrix, compared with the semicircle moments.
// With `reference_seed`, an equally sized truly random Wigner sample is drawn
// for comparison.
MomentReport test_moment_match(std::span<const ScaledSignMatrix> matrices, unsigned l_max,
                               std::optional<std::uint64_t> reference_seed = std::nullopt);

// ---------------------------------------------------------------------------
// Quasi-random graph conditions

struct QuasiRandomReport {
  std::size_t order = 0;
  // Eigenvalues of T in descending order: lambda1 >= lambda2 >= ...
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double lambda2_magnitude = 0.0;  // second largest |eigenvalue|, informational
  std::int64_t edge_sum = 0;  // sum t_ij
  std::int64_t sign_sum = 0;  // sum q_ij
  double q_norm = 0.0;        // spectral norm of Q
  bool lambda1_ok = false;    // |lambda1 - N/2| <= sqrt N
  bool lambda2_ok = false;    // lambda2 <= sqrt N
  bool sign_sum_ok = false;   // |sum q_ij| <= 2 N^1.5
  bool spectral_norm_ok = false;  // ||Q|| <= 2 sqrt N, informational
  bool identity_ok = false;       // 2 T - J == Q entrywise
  bool pass = false;
};

// Q = 2 sqrt(N) A is the sign matrix and T = (J + Q) / 2 the graph adjacency.
// A precomputed spectrum of the scaled matrix saves one eigensolve.
QuasiRandomReport quasirandom_check(const ScaledSignMatrix& matrix, const Spectrum* scaled_spectrum = nullptr);

// ---------------------------------------------------------------------------
// Variance of x^T A x

struct Rational {
  Int128 num = 0;
  Int128 den = 1;

  static Rational make(Int128 num, Int128 den);
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend bool operator==(const Rational& a, const Rational& b) { return a.num == b.num && a.den == b.den; }
};

struct VarianceReport {
  std::size_t order = 0;
  std::size_t samples = 0;
  bool exhaustive = false;
  double estimate = 0.0;
  double std_error = 0.0;
  double fourth_power_sum = 0.0;  // sum x_i^4
  double exact_reference = 0.0;   // (2 - sum x_i^4) / (4N)
  double asymptotic_reference = 0.0;  // 1 / (2N), exact only as sum x_i^4 -> 0
  double correction = 0.0;            // exact_reference - asymptotic_reference
  bool correction_flagged = false;
};

// Variance of xi = x^T A x over the given matrices. Exhaustive mode treats
// them as the whole (uniformly weighted) ensemble; otherwise they are an i.i.d.
// sample. Throws ParameterError unless |x| = 1 within 1e-12.
VarianceReport quadratic_form_variance(std::span<const ScaledSignMatrix> matrices, std::span<const double> x,
                                       bool exhaustive);

// Exact variance over a uniformly weighted ensemble for x_i = sqrt(w_i), from
// integer entry covariances. Throws ParameterError if two distinct entries
// are correlated (the result would not be rational) or the weights do not sum
// to 1.
Rational exact_quadratic_form_variance(std::span<const ScaledSignMatrix> ensemble,
                                       std::span<const Rational> squared_weights);

// All 2^(N(N+1)/2) symmetric sign matrices, N <= 5.
std::vector<ScaledSignMatrix> enumerate_sign_matrices(std::size_t order);

// ---------------------------------------------------------------------------
// Kolmogorov-distance bound 1/r

// Orders below this are reported without a pass claim.
inline constexpr std::size_t kMinOrderForKsClaim = 16;

struct KsBoundReport {
  std::size_t order = 0;
  unsigned r = 0;
  double threshold = 0.0;
  std::vector<double> distances;
  double fraction_within = 0.0;
  double min_distance = 0.0;
  double mean_distance = 0.0;
  double max_distance = 0.0;
  bool claim_applicable = false;
};

// Draws `sample_size` matrices with seeded uniform messages and reports the
// fraction whose Kolmogorov distance to the semicircle law is at most 1/r.
KsBoundReport ks_bound_validation(const EnsembleParams& params, std::size_t sample_size, unsigned r,
                                  std::uint64_t seed);
// Same with truly random Wigner matrices.
KsBoundReport ks_bound_validation_random(std::size_t order, std::size_t sample_size, unsigned r, std::uint64_t seed);
KsBoundReport summarize_ks_distances(std::size_t order, unsigned r, std::vector<double> distances);

}  // namespace pwig
