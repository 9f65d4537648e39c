#include "pwig/matgen.hpp"

#include <string>
#include <utility>

#include "pwig/error.hpp"
#include "pwig/prng.hpp"

namespace pwig {

ScaledSignMatrix::ScaledSignMatrix(std::size_t order, std::vector<std::int8_t> dense_signs)
    : order_(order), signs_(std::move(dense_signs)) {
  if (order_ == 0) throw ParameterError("matrix order must be positive");
  if (signs_.size() != order_ * order_) throw ParameterError("dense sign array has wrong size");
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = i; j < order_; ++j) {
      const int s = sign(i, j);
      if (s != 1 && s != -1) throw ParameterError("sign matrix entries must be +1 or -1");
      if (s != sign(j, i)) throw ParameterError("sign matrix is not symmetric");
    }
  }
}

std::vector<double> ScaledSignMatrix::dense_values() const {
  const double s = scale();
  std::vector<double> out(signs_.size());
  for (std::size_t i = 0; i < signs_.size(); ++i) out[i] = signs_[i] * s;
  return out;
}

std::vector<std::int8_t> ScaledSignMatrix::upper_triangle() const {
  std::vector<std::int8_t> out;
  out.reserve(triangle_size(order_));
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = i; j < order_; ++j) out.push_back(signs_[i * order_ + j]);
  return out;
}

unsigned m_for_order(std::size_t order) {
  if (order < 2) throw ParameterError("matrix order must be at least 2");
  const std::uint64_t entries = triangle_size(order);
  unsigned m = 1;
  while (((std::uint64_t{1} << m) - 1) < entries) ++m;
  return m;
}

std::vector<std::int8_t> zeta(std::span<const std::uint8_t> bits) {
  std::vector<std::int8_t> out(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) out[i] = bits[i] ? -1 : 1;
  return out;
}

ScaledSignMatrix build_matrix(std::span<const std::int8_t> signs, std::size_t order) {
  if (order == 0) throw ParameterError("matrix order must be positive");
  const std::size_t needed = triangle_size(order);
  if (signs.size() < needed)
    throw ParameterError("need " + std::to_string(needed) + " signs for order " + std::to_string(order) + ", got " +
                         std::to_string(signs.size()));
  std::vector<std::int8_t> dense(order * order);
  std::size_t next = 0;
  for (std::size_t i = 0; i < order; ++i) {
    for (std::size_t j = i; j < order; ++j) {
      dense[i * order + j] = signs[next];
      dense[j * order + i] = signs[next];
      ++next;
    }
  }
  return ScaledSignMatrix(order, std::move(dense));
}

EnsembleParams make_ensemble_params(std::size_t order, unsigned delta, std::optional<BinaryPolynomial> primitive) {
  EnsembleParams p;
  p.order = order;
  p.m = m_for_order(order);
  if (p.m < kMinFieldDegree || p.m > kMaxFieldDegree)
    throw ParameterError("order " + std::to_string(order) + " needs field degree " + std::to_string(p.m) +
                         " outside [2, 32]");
  code_params(p.m, delta);
  p.delta = delta;
  p.primitive = primitive ? std::move(*primitive) : default_primitive(p.m);
  if (p.primitive.degree() != std::optional<std::size_t>{p.m})
    throw ParameterError("primitive polynomial " + p.primitive.to_hex() + " must have degree " + std::to_string(p.m));
  p.independence_order = delta - 1;
  return p;
}

PseudoWignerEnsemble::PseudoWignerEnsemble(EnsembleParams params)
    : params_(std::move(params)), code_(make_bch_code(params_.m, params_.delta, params_.primitive)) {
  if (triangle_size(params_.order) > code_.n)
    throw ParameterError("code length is shorter than the upper triangle");
}

ScaledSignMatrix PseudoWignerEnsemble::sample(const BinaryPolynomial& message) const {
  const auto bits = dual_codeword_prefix(code_, message, triangle_size(params_.order));
  return build_matrix(zeta(bits), params_.order);
}

BinaryPolynomial PseudoWignerEnsemble::random_message(std::uint64_t seed, std::uint64_t index) const {
  CounterRng rng(derive_key(seed, index));
  BinaryPolynomial v;
  std::uint64_t word = 0;
  for (std::uint64_t i = 0; i < code_.k_dual; ++i) {
    if (i % 64 == 0) word = rng();
    if ((word >> (i % 64)) & 1) v.set_coeff(i, true);
  }
  return v;
}

ScaledSignMatrix sample_pseudo_wigner(const EnsembleParams& params, const BinaryPolynomial& message) {
  return PseudoWignerEnsemble(params).sample(message);
}

ScaledSignMatrix sample_pseudo_wigner(const EnsembleParams& params, std::span<const std::uint8_t> message_bits) {
  PseudoWignerEnsemble ensemble(params);
  if (message_bits.size() != ensemble.message_bits())
    throw ParameterError("message must have exactly k_dual = " + std::to_string(ensemble.message_bits()) + " bits");
  return ensemble.sample(BinaryPolynomial::from_bits(message_bits));
}

ScaledSignMatrix sample_random_wigner(std::size_t order, std::uint64_t seed) {
  if (order == 0) throw ParameterError("matrix order must be positive");
  CounterRng rng(seed);
  std::vector<std::int8_t> signs(triangle_size(order));
  std::uint64_t word = 0;
  for (std::size_t e = 0; e < signs.size(); ++e) {
    if (e % 64 == 0) word = rng.at(e / 64);
    signs[e] = ((word >> (e % 64)) & 1) ? -1 : 1;
  }
  return build_matrix(signs, order);
}

}  // namespace pwig
