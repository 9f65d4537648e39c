#pragma once

// Symmetric sign matrices: the pseudo-Wigner construction from dual BCH
// codewords and the truly random Wigner reference sampler.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pwig/codes.hpp"
#include "pwig/gf2.hpp"

namespace pwig {

// Symmetric N x N matrix of +1/-1 signs with the implicit scale 1/(2 sqrt N).
class ScaledSignMatrix {
 public:
  ScaledSignMatrix() = default;
  // Takes a dense row-major N x N sign array; throws ParameterError unless it
  // is symmetric with every entry +1 or -1.
  ScaledSignMatrix(std::size_t order, std::vector<std::int8_t> dense_signs);

  std::size_t order() const { return order_; }
  int sign(std::size_t i, std::size_t j) const { return signs_[i * order_ + j]; }
  // sqrt(N) / (2N), so N = 2 gives the correctly rounded 1/(2 sqrt 2)
  double scale() const { return std::sqrt(static_cast<double>(order_)) / (2.0 * static_cast<double>(order_)); }
  double value(std::size_t i, std::size_t j) const { return sign(i, j) * scale(); }

  std::span<const std::int8_t> signs() const { return signs_; }
  // Row-major scaled entries.
  std::vector<double> dense_values() const;
  // Upper triangle including the diagonal, row by row.
  std::vector<std::int8_t> upper_triangle() const;

  friend bool operator==(const ScaledSignMatrix&, const ScaledSignMatrix&) = default;

 private:
  std::size_t order_ = 0;
  std::vector<std::int8_t> signs_;
};

inline std::size_t triangle_size(std::size_t order) { return order * (order + 1) / 2; }

// Unique m with 2^(m-1) - 1 < N(N+1)/2 <= 2^m - 1.
unsigned m_for_order(std::size_t order);

// 0 -> +1, 1 -> -1.
std::vector<std::int8_t> zeta(std::span<const std::uint8_t> bits);

// Fills the upper triangle (diagonal included) row by row from the first
// N(N+1)/2 signs and mirrors it.
ScaledSignMatrix build_matrix(std::span<const std::int8_t> signs, std::size_t order);

struct EnsembleParams {
  std::size_t order = 0;
  unsigned m = 0;
  unsigned delta = 0;
  BinaryPolynomial primitive;
  unsigned independence_order = 0;  // delta - 1
};

// m from m_for_order, the tabulated primitive polynomial unless overridden.
EnsembleParams make_ensemble_params(std::size_t order, unsigned delta,
                                    std::optional<BinaryPolynomial> primitive = std::nullopt);

// Holds the BCH code so repeated draws do not rebuild it.
class PseudoWignerEnsemble {
 public:
  explicit PseudoWignerEnsemble(EnsembleParams params);

  const EnsembleParams& params() const { return params_; }
  const BchCode& code() const { return code_; }
  std::uint64_t message_bits() const { return code_.k_dual; }

  ScaledSignMatrix sample(const BinaryPolynomial& message) const;
  // Uniform message for draw `index` under `seed`.
  BinaryPolynomial random_message(std::uint64_t seed, std::uint64_t index) const;

 private:
  EnsembleParams params_;
  BchCode code_;
};

ScaledSignMatrix sample_pseudo_wigner(const EnsembleParams& params, const BinaryPolynomial& message);
ScaledSignMatrix sample_pseudo_wigner(const EnsembleParams& params, std::span<const std::uint8_t> message_bits);

// Upper-triangle entry e (row-major) takes bit e % 64 of output e / 64 of
// CounterRng(seed); a set bit gives -1.
ScaledSignMatrix sample_random_wigner(std::size_t order, std::uint64_t seed);

}  // namespace pwig
