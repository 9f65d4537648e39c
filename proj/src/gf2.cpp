#include "pwig/gf2.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <utility>

#include "pwig/error.hpp"

namespace pwig {

namespace {

constexpr std::size_t kWordBits = 64;

// dst ^= src << shift, growing dst as needed.
void xor_shifted(std::vector<std::uint64_t>& dst, std::span<const std::uint64_t> src,
                 std::size_t shift) {
  if (src.empty()) return;
  const std::size_t word_shift = shift / kWordBits;
  const unsigned bit_shift = shift % kWordBits;
  const std::size_t needed = src.size() + word_shift + (bit_shift ? 1 : 0);
  if (dst.size() < needed) dst.resize(needed, 0);
  if (bit_shift == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i + word_shift] ^= src[i];
    return;
  }
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i + word_shift] ^= (src[i] << bit_shift) | carry;
    carry = src[i] >> (kWordBits - bit_shift);
  }
  dst[src.size() + word_shift] ^= carry;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

// Carry-less product of two words of at most 32 significant bits.
std::uint64_t clmul32(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    r ^= a << std::countr_zero(b);
    b &= b - 1;
  }
  return r;
}

}  // namespace

BinaryPolynomial::BinaryPolynomial(std::vector<std::uint64_t> words) : words_(std::move(words)) {
  trim();
}

void BinaryPolynomial::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

BinaryPolynomial BinaryPolynomial::from_word(std::uint64_t word) {
  return BinaryPolynomial(std::vector<std::uint64_t>{word});
}

BinaryPolynomial BinaryPolynomial::monomial(std::size_t exponent) {
  BinaryPolynomial p;
  p.set_coeff(exponent, true);
  return p;
}

BinaryPolynomial BinaryPolynomial::from_exponents(std::initializer_list<std::size_t> exponents) {
  BinaryPolynomial p;
  for (std::size_t e : exponents) p.set_coeff(e, !p.coeff(e));
  return p;
}

BinaryPolynomial BinaryPolynomial::from_bits(std::span<const std::uint8_t> bits) {
  std::vector<std::uint64_t> words((bits.size() + kWordBits - 1) / kWordBits, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] > 1) throw FormatError("bit values must be 0 or 1");
    if (bits[i]) words[i / kWordBits] |= std::uint64_t{1} << (i % kWordBits);
  }
  return BinaryPolynomial(std::move(words));
}

BinaryPolynomial BinaryPolynomial::from_hex(std::string_view hex) {
  if (hex.size() >= 2 && hex[0] == '0' && (hex[1] == 'x' || hex[1] == 'X')) hex.remove_prefix(2);
  if (hex.empty()) throw FormatError("empty hex polynomial");
  std::vector<std::uint64_t> words((hex.size() * 4 + kWordBits - 1) / kWordBits, 0);
  std::size_t nibble = 0;
  for (auto it = hex.rbegin(); it != hex.rend(); ++it, ++nibble) {
    const int d = hex_digit(*it);
    if (d < 0) throw FormatError("invalid hex digit in polynomial: '" + std::string(1, *it) + "'");
    words[nibble * 4 / kWordBits] |= std::uint64_t(d) << (nibble * 4 % kWordBits);
  }
  return BinaryPolynomial(std::move(words));
}

std::string BinaryPolynomial::to_hex() const {
  if (is_zero()) return "0x0";
  static constexpr char kDigits[] = "0123456789abcdef";
  const std::size_t nibbles = *degree() / 4 + 1;
  std::string out(nibbles, '0');
  for (std::size_t n = 0; n < nibbles; ++n) {
    const std::uint64_t w = words_[n * 4 / kWordBits] >> (n * 4 % kWordBits);
    out[nibbles - 1 - n] = kDigits[w & 0xf];
  }
  return "0x" + out;
}

std::string BinaryPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (std::size_t i = *degree() + 1; i-- > 0;) {
    if (!coeff(i)) continue;
    if (!out.empty()) out += " + ";
    if (i == 0) out += "1";
    else if (i == 1) out += "x";
    else out += "x^" + std::to_string(i);
  }
  return out;
}

std::optional<std::size_t> BinaryPolynomial::degree() const {
  if (words_.empty()) return std::nullopt;
  return (words_.size() - 1) * kWordBits + (kWordBits - 1 - std::countl_zero(words_.back()));
}

bool BinaryPolynomial::coeff(std::size_t i) const {
  const std::size_t w = i / kWordBits;
  return w < words_.size() && ((words_[w] >> (i % kWordBits)) & 1);
}

void BinaryPolynomial::set_coeff(std::size_t i, bool value) {
  const std::size_t w = i / kWordBits;
  const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    if (words_.size() <= w) words_.resize(w + 1, 0);
    words_[w] |= mask;
  } else if (w < words_.size()) {
    words_[w] &= ~mask;
    trim();
  }
}

std::size_t BinaryPolynomial::weight() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::vector<std::uint8_t> BinaryPolynomial::bits(std::size_t length) const {
  std::vector<std::uint8_t> out(length, 0);
  const std::size_t limit = std::min(length, words_.size() * kWordBits);
  for (std::size_t i = 0; i < limit; ++i) out[i] = (words_[i / kWordBits] >> (i % kWordBits)) & 1;
  return out;
}

BinaryPolynomial BinaryPolynomial::shifted(std::size_t amount) const {
  std::vector<std::uint64_t> out;
  xor_shifted(out, words_, amount);
  return BinaryPolynomial(std::move(out));
}

BinaryPolynomial& BinaryPolynomial::operator+=(const BinaryPolynomial& other) {
  if (words_.size() < other.words_.size()) words_.resize(other.words_.size(), 0);
  for (std::size_t i = 0; i < other.words_.size(); ++i) words_[i] ^= other.words_[i];
  trim();
  return *this;
}

BinaryPolynomial operator*(const BinaryPolynomial& a, const BinaryPolynomial& b) {
  // Shift-and-add over the set bits of the sparser operand.
  const BinaryPolynomial& sparse = a.weight() <= b.weight() ? a : b;
  const BinaryPolynomial& dense = &sparse == &a ? b : a;
  std::vector<std::uint64_t> out;
  for (std::size_t w = 0; w < sparse.words_.size(); ++w) {
    std::uint64_t word = sparse.words_[w];
    while (word) {
      xor_shifted(out, dense.words_, w * kWordBits + std::countr_zero(word));
      word &= word - 1;
    }
  }
  return BinaryPolynomial(std::move(out));
}

DivRem divrem(const BinaryPolynomial& dividend, const BinaryPolynomial& divisor) {
  if (divisor.is_zero()) throw ParameterError("polynomial division by zero");
  const std::size_t divisor_degree = *divisor.degree();
  std::vector<std::uint64_t> rem(dividend.words().begin(), dividend.words().end());
  BinaryPolynomial quotient;

  auto top_degree = [&rem]() -> std::optional<std::size_t> {
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    if (rem.empty()) return std::nullopt;
    return (rem.size() - 1) * kWordBits + (kWordBits - 1 - std::countl_zero(rem.back()));
  };

  for (auto deg = top_degree(); deg && *deg >= divisor_degree; deg = top_degree()) {
    const std::size_t shift = *deg - divisor_degree;
    quotient.set_coeff(shift, true);
    xor_shifted(rem, divisor.words(), shift);
  }
  BinaryPolynomial remainder;
  for (std::size_t i = 0; i < rem.size(); ++i) {
    std::uint64_t word = rem[i];
    while (word) {
      remainder.set_coeff(i * kWordBits + std::countr_zero(word), true);
      word &= word - 1;
    }
  }
  return {std::move(quotient), std::move(remainder)};
}

BinaryPolynomial reciprocal(const BinaryPolynomial& f) {
  if (!f.coeff(0)) throw ParameterError("reciprocal requires a nonzero constant term");
  const std::size_t d = *f.degree();
  BinaryPolynomial out;
  for (std::size_t i = 0; i <= d; ++i)
    if (f.coeff(i)) out.set_coeff(d - i, true);
  return out;
}

BinaryPolynomial gcd(BinaryPolynomial a, BinaryPolynomial b) {
  while (!b.is_zero()) {
    BinaryPolynomial r = divrem(a, b).remainder;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BinaryPolynomial mulmod(const BinaryPolynomial& a, const BinaryPolynomial& b,
                        const BinaryPolynomial& modulus) {
  return divrem(a * b, modulus).remainder;
}

BinaryPolynomial powmod(const BinaryPolynomial& base, std::uint64_t exponent,
                        const BinaryPolynomial& modulus) {
  BinaryPolynomial result = divrem(BinaryPolynomial::from_word(1), modulus).remainder;
  BinaryPolynomial square = divrem(base, modulus).remainder;
  while (exponent) {
    if (exponent & 1) result = mulmod(result, square, modulus);
    exponent >>= 1;
    if (exponent) square = mulmod(square, square, modulus);
  }
  return result;
}

bool is_irreducible(const BinaryPolynomial& f) {
  const auto deg = f.degree();
  if (!deg || *deg < 1) return false;
  if (*deg == 1) return true;
  const BinaryPolynomial x = BinaryPolynomial::monomial(1);
  // Rabin: gcd(f, x^(2^i) - x) = 1 for i <= deg/2, and x^(2^deg) = x mod f.
  BinaryPolynomial frobenius = divrem(x, f).remainder;
  for (std::size_t i = 1; i <= *deg; ++i) {
    frobenius = mulmod(frobenius, frobenius, f);
    if (i <= *deg / 2) {
      const BinaryPolynomial g = gcd(f, frobenius + x);
      if (g.degree() != std::optional<std::size_t>{0}) return false;
    }
  }
  return frobenius == divrem(x, f).remainder;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t value) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= value; p += (p == 2 ? 1 : 2)) {
    if (value % p) continue;
    out.push_back(p);
    while (value % p == 0) value /= p;
  }
  if (value > 1) out.push_back(value);
  return out;
}

bool is_primitive(const BinaryPolynomial& f) {
  const auto deg = f.degree();
  if (!deg || *deg < 2 || *deg > kMaxFieldDegree) return false;
  if (!is_irreducible(f)) return false;
  const std::uint64_t group_order = (std::uint64_t{1} << *deg) - 1;
  const BinaryPolynomial x = BinaryPolynomial::monomial(1);
  const BinaryPolynomial one = BinaryPolynomial::from_word(1);
  for (std::uint64_t p : prime_factors(group_order))
    if (powmod(x, group_order / p, f) == one) return false;
  return true;
}

const BinaryPolynomial& default_primitive(unsigned m) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree)
    throw ParameterError("no tabulated primitive polynomial for m = " + std::to_string(m));
  static const std::array<BinaryPolynomial, kMaxFieldDegree + 1> table = [] {
    std::array<BinaryPolynomial, kMaxFieldDegree + 1> t;
    t[2] = BinaryPolynomial::from_exponents({2, 1, 0});
    t[3] = BinaryPolynomial::from_exponents({3, 1, 0});
    t[4] = BinaryPolynomial::from_exponents({4, 1, 0});
    t[5] = BinaryPolynomial::from_exponents({5, 2, 0});
    t[6] = BinaryPolynomial::from_exponents({6, 1, 0});
    t[7] = BinaryPolynomial::from_exponents({7, 1, 0});
    t[8] = BinaryPolynomial::from_exponents({8, 4, 3, 2, 0});
    t[9] = BinaryPolynomial::from_exponents({9, 4, 0});
    t[10] = BinaryPolynomial::from_exponents({10, 3, 0});
    t[11] = BinaryPolynomial::from_exponents({11, 2, 0});
    t[12] = BinaryPolynomial::from_exponents({12, 6, 4, 1, 0});
    t[13] = BinaryPolynomial::from_exponents({13, 4, 3, 1, 0});
    t[14] = BinaryPolynomial::from_exponents({14, 10, 6, 1, 0});
    t[15] = BinaryPolynomial::from_exponents({15, 1, 0});
    t[16] = BinaryPolynomial::from_exponents({16, 12, 3, 1, 0});
    t[17] = BinaryPolynomial::from_exponents({17, 3, 0});
    t[18] = BinaryPolynomial::from_exponents({18, 7, 0});
    t[19] = BinaryPolynomial::from_exponents({19, 5, 2, 1, 0});
    t[20] = BinaryPolynomial::from_exponents({20, 3, 0});
    t[21] = BinaryPolynomial::from_exponents({21, 2, 0});
    t[22] = BinaryPolynomial::from_exponents({22, 1, 0});
    t[23] = BinaryPolynomial::from_exponents({23, 5, 0});
    t[24] = BinaryPolynomial::from_exponents({24, 7, 2, 1, 0});
    t[25] = BinaryPolynomial::from_exponents({25, 3, 0});
    t[26] = BinaryPolynomial::from_exponents({26, 6, 2, 1, 0});
    t[27] = BinaryPolynomial::from_exponents({27, 5, 2, 1, 0});
    t[28] = BinaryPolynomial::from_exponents({28, 3, 0});
    t[29] = BinaryPolynomial::from_exponents({29, 2, 0});
    t[30] = BinaryPolynomial::from_exponents({30, 23, 2, 1, 0});
    t[31] = BinaryPolynomial::from_exponents({31, 3, 0});
    t[32] = BinaryPolynomial::from_exponents({32, 22, 2, 1, 0});
    return t;
  }();
  return table[m];
}

FieldGF2m::FieldGF2m(unsigned m, BinaryPolynomial modulus) : m_(m), modulus_(std::move(modulus)) {
  if (m < kMinFieldDegree || m > kMaxFieldDegree)
    throw ParameterError("field degree must lie in [2, 32], got " + std::to_string(m));
  if (modulus_.degree() != std::optional<std::size_t>{m})
    throw ParameterError("modulus " + modulus_.to_hex() + " does not have degree " + std::to_string(m));
  if (!is_primitive(modulus_))
    throw ParameterError("modulus " + modulus_.to_string() + " is not primitive");
  reduction_ = modulus_.low_word() & ((std::uint64_t{1} << m) - 1);
}

FieldElement FieldGF2m::mul(FieldElement a, FieldElement b) const {
  std::uint64_t product = clmul32(a.bits, b.bits);
  // Fold bits at positions >= m back using x^m = reduction_.
  for (unsigned i = 2 * m_ - 1; i-- > m_;) {
    if ((product >> i) & 1) {
      product ^= std::uint64_t{1} << i;
      product ^= reduction_ << (i - m_);
    }
  }
  return {product};
}

FieldElement FieldGF2m::pow(FieldElement a, std::uint64_t k) const {
  FieldElement result = one();
  while (k) {
    if (k & 1) result = mul(result, a);
    k >>= 1;
    if (k) a = mul(a, a);
  }
  return result;
}

std::uint64_t FieldGF2m::element_order(FieldElement a) const {
  if (a == zero()) throw ParameterError("zero has no multiplicative order");
  std::uint64_t ord = order();
  for (std::uint64_t p : prime_factors(order())) {
    while (ord % p == 0 && pow(a, ord / p) == one()) ord /= p;
  }
  return ord;
}

FieldElement FieldGF2m::evaluate(const BinaryPolynomial& p, FieldElement e) const {
  FieldElement acc = zero();
  if (p.is_zero()) return acc;
  for (std::size_t i = *p.degree() + 1; i-- > 0;) {
    acc = mul(acc, e);
    if (p.coeff(i)) acc = add(acc, one());
  }
  return acc;
}

BinaryPolynomial minimal_polynomial(const FieldGF2m& field, FieldElement e) {
  if (e == field.zero()) throw ParameterError("minimal polynomial of zero is x; nonzero element required");
  std::vector<FieldElement> conjugates{e};
  for (FieldElement c = field.square(e); c != e; c = field.square(c)) conjugates.push_back(c);

  // coeffs[i] is the coefficient of x^i, with entries in GF(2^m).
  std::vector<FieldElement> coeffs{field.one()};
  for (FieldElement c : conjugates) {
    std::vector<FieldElement> next(coeffs.size() + 1, field.zero());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i + 1] = field.add(next[i + 1], coeffs[i]);
      next[i] = field.add(next[i], field.mul(coeffs[i], c));
    }
    coeffs = std::move(next);
  }
  BinaryPolynomial out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i].bits > 1)
      throw ConsistencyError("minimal polynomial coefficient outside GF(2)");
    if (coeffs[i].bits) out.set_coeff(i, true);
  }
  return out;
}

}  // namespace pwig
