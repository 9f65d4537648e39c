#include "pwig/codes.hpp"

#include <bit>
#include <fstream>
#include <limits>
#include <string>

#include "pwig/error.hpp"

namespace pwig {

CodeParams code_params(unsigned m, unsigned delta) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree)
    throw ParameterError("field degree m must lie in [2, 32], got " + std::to_string(m));
  if (delta < 3 || delta % 2 == 0)
    throw ParameterError("designed distance must be odd and >= 3, got " + std::to_string(delta));
  const unsigned t = (delta - 1) / 2;
  const std::uint64_t bound = (std::uint64_t{1} << (m / 2)) + 1;
  if (2 * std::uint64_t{t} - 1 >= bound)
    throw ParameterError("designed distance " + std::to_string(delta) + " outside the regime 2t-1 < 2^floor(m/2)+1 = " +
                         std::to_string(bound) + " for m = " + std::to_string(m));
  CodeParams p;
  p.n = (std::uint64_t{1} << m) - 1;
  p.t = t;
  p.k_dual = std::uint64_t{m} * t;
  if (p.k_dual >= p.n) throw ParameterError("dual dimension m t must be below n");
  p.k = p.n - p.k_dual;
  return p;
}

BinaryPolynomial bch_generator(const FieldGF2m& field, unsigned delta) {
  code_params(field.degree(), delta);
  // Start from the minimal polynomial of alpha (the modulus itself) and
  // multiply in each new minimal polynomial of alpha^j.
  BinaryPolynomial g = field.modulus();
  for (unsigned j = 2; j < delta; ++j) {
    BinaryPolynomial fj = minimal_polynomial(field, field.alpha_pow(j));
    if (!divrem(g, fj).remainder.is_zero()) g = g * fj;
  }
  return g;
}

BinaryPolynomial dual_check_poly(const BinaryPolynomial& generator, std::uint64_t n) {
  const BinaryPolynomial xn1 = BinaryPolynomial::from_exponents({static_cast<std::size_t>(n), 0});
  auto [quotient, remainder] = divrem(xn1, reciprocal(generator));
  if (!remainder.is_zero())
    throw ConsistencyError("reciprocal of " + generator.to_hex() + " does not divide x^" + std::to_string(n) + " + 1");
  return quotient;
}

BchCode make_bch_code(const FieldGF2m& field, unsigned delta) {
  const CodeParams p = code_params(field.degree(), delta);
  BchCode code;
  code.m = field.degree();
  code.delta = delta;
  code.t = p.t;
  code.n = p.n;
  code.primitive = field.modulus();
  code.generator = bch_generator(field, delta);
  code.check = dual_check_poly(code.generator, p.n);
  if (*code.generator.degree() != p.k_dual)
    throw ConsistencyError("generator degree " + std::to_string(*code.generator.degree()) +
                           " differs from m t = " + std::to_string(p.k_dual));
  code.k = p.k;
  code.k_dual = p.n - *code.check.degree();
  return code;
}

BchCode make_bch_code(unsigned m, unsigned delta, const BinaryPolynomial& primitive) {
  return make_bch_code(FieldGF2m(m, primitive), delta);
}

DualCodeword dual_codeword(const BchCode& code, const BinaryPolynomial& message) {
  if (!message.is_zero() && *message.degree() >= code.k_dual)
    throw ParameterError("message degree must be below k_dual = " + std::to_string(code.k_dual));
  return {message, message * code.check, code.n};
}

DualCodeword dual_codeword(const BchCode& code, std::span<const std::uint8_t> message_bits) {
  if (message_bits.size() != code.k_dual)
    throw ParameterError("message must have exactly k_dual = " + std::to_string(code.k_dual) + " bits, got " +
                         std::to_string(message_bits.size()));
  return dual_codeword(code, BinaryPolynomial::from_bits(message_bits));
}

std::vector<std::uint8_t> dual_codeword_prefix(const BchCode& code, const BinaryPolynomial& message,
                                               std::uint64_t count) {
  if (count > code.n) throw ParameterError("requested more bits than the code length");
  if (code.delta != 3) return dual_codeword(code, message).poly.bits(count);

  if (!message.is_zero() && *message.degree() >= code.k_dual)
    throw ParameterError("message degree must be below k_dual = " + std::to_string(code.k_dual));
  // Every codeword c satisfies c(x) g^(x) = 0 mod x^n + 1, which unrolls to the
  // recurrence driven by g; seed it with the first m coefficients of v(x) h(x).
  const std::uint64_t low_mask = (std::uint64_t{1} << code.m) - 1;
  std::uint64_t state = 0;
  const std::uint64_t check_low = code.check.low_word() & low_mask;
  const std::uint64_t v = message.low_word();
  for (unsigned i = 0; i < code.m; ++i)
    if ((v >> i) & 1) state ^= check_low << i;
  state &= low_mask;
  if (state == 0) return std::vector<std::uint8_t>(count, 0);  // zero codeword
  return lfsr_sequence(code.generator, state, count);
}

DualCodeword DualCodewordRange::iterator::operator*() const {
  return dual_codeword(*code_, BinaryPolynomial::from_word(index_));
}

DualCodewordRange enumerate_dual_codewords(const BchCode& code) {
  if (code.k_dual > kMaxEnumeratedDualDim)
    throw ParameterError("dual dimension " + std::to_string(code.k_dual) + " exceeds the enumeration limit of " +
                         std::to_string(kMaxEnumeratedDualDim) + "; sample codewords instead");
  return DualCodewordRange(&code);
}

std::vector<std::uint8_t> lfsr_sequence(const BinaryPolynomial& feedback, std::uint64_t initial_state,
                                        std::uint64_t count) {
  const auto deg = feedback.degree();
  if (!deg || *deg < 1 || *deg > 64) throw ParameterError("LFSR feedback polynomial must have degree in [1, 64]");
  const unsigned m = static_cast<unsigned>(*deg);
  const std::uint64_t mask = m == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
  if ((initial_state & mask) == 0 || (initial_state & ~mask) != 0)
    throw ParameterError("LFSR initial state must be nonzero and fit in m bits");
  const std::uint64_t taps = feedback.low_word() & mask;

  std::vector<std::uint8_t> out(count);
  std::uint64_t state = initial_state;
  for (std::uint64_t k = 0; k < count; ++k) {
    out[k] = state & 1;
    const std::uint64_t next = std::popcount(state & taps) & 1;
    state = (state >> 1) | (next << (m - 1));
  }
  return out;
}

std::vector<std::uint8_t> lfsr_msequence(const BinaryPolynomial& primitive, std::uint64_t initial_state) {
  if (!is_primitive(primitive)) throw ParameterError(primitive.to_string() + " is not primitive");
  const std::uint64_t period = (std::uint64_t{1} << *primitive.degree()) - 1;
  return lfsr_sequence(primitive, initial_state, period);
}

unsigned min_distance_bruteforce(const BinaryPolynomial& generator, std::uint64_t n) {
  if (generator.is_zero()) throw ParameterError("generator must be nonzero");
  if (n > 64) throw ParameterError("brute-force minimum distance supports n <= 64");
  const std::size_t deg = *generator.degree();
  if (deg >= n) throw ParameterError("generator degree must be below n");
  const std::uint64_t dim = n - deg;
  if (dim > kMaxBruteForceDim)
    throw ParameterError("code dimension " + std::to_string(dim) + " exceeds brute-force limit " +
                         std::to_string(kMaxBruteForceDim));
  const std::uint64_t g = generator.low_word();
  // Gray-code walk: consecutive messages differ in one basis row x^i g(x).
  unsigned best = std::numeric_limits<unsigned>::max();
  std::uint64_t word = 0;
  for (std::uint64_t step = 1; step < (std::uint64_t{1} << dim); ++step) {
    word ^= g << std::countr_zero(step);
    best = std::min(best, static_cast<unsigned>(std::popcount(word)));
  }
  return best;
}

void write_codeword_file(const std::filesystem::path& path, const BchCode& code, const DualCodeword& word) {
  std::vector<char> bytes((word.length + 7) / 8, 0);
  for (std::uint64_t i = 0; i < word.length; ++i)
    if (word.bit(i)) bytes[i / 8] = static_cast<char>(bytes[i / 8] | (1 << (i % 8)));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));

  std::filesystem::path header_path = path;
  header_path += ".hdr";
  std::ofstream header(header_path);
  if (!header) throw Error("cannot open " + header_path.string() + " for writing");
  header << "format: packed-le-bits\n"
         << "length: " << word.length << "\n"
         << "m: " << code.m << "\n"
         << "delta: " << code.delta << "\n"
         << "primitive: " << code.primitive.to_hex() << "\n"
         << "message: " << word.message.to_hex() << "\n";
  if (!out || !header) throw Error("write failed for " + path.string());
}

}  // namespace pwig
