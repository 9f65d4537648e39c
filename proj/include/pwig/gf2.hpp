#pragma once

// Binary polynomial arithmetic and GF(2^m) construction.
//
// Coefficients are stored little-endian: bit i of the packed word vector is
// the coefficient of x^i. The same convention is used by the hex encoding,
// so x^18 + x^7 + 1 serializes as "0x40081".

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pwig {

class BinaryPolynomial {
 public:
  BinaryPolynomial() = default;

  static BinaryPolynomial from_word(std::uint64_t word);
  static BinaryPolynomial monomial(std::size_t exponent);
  static BinaryPolynomial from_exponents(std::initializer_list<std::size_t> exponents);
  // One byte per coefficient, each 0 or 1; bits[i] is the coefficient of x^i.
  static BinaryPolynomial from_bits(std::span<const std::uint8_t> bits);
  // Accepts an optional "0x" prefix and either letter case.
  static BinaryPolynomial from_hex(std::string_view hex);

  // Lowercase, "0x"-prefixed; the zero polynomial is "0x0".
  std::string to_hex() const;
  // Human-readable form such as "x^4 + x + 1".
  std::string to_string() const;

  // Empty for the zero polynomial.
  std::optional<std::size_t> degree() const;
  bool is_zero() const { return words_.empty(); }
  bool coeff(std::size_t i) const;
  void set_coeff(std::size_t i, bool value);
  std::size_t weight() const;

  // Coefficients 0..length-1 as one byte each.
  std::vector<std::uint8_t> bits(std::size_t length) const;
  std::span<const std::uint64_t> words() const { return words_; }
  // Coefficients of x^0..x^63.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  BinaryPolynomial shifted(std::size_t amount) const;

  BinaryPolynomial& operator+=(const BinaryPolynomial& other);
  friend BinaryPolynomial operator+(BinaryPolynomial a, const BinaryPolynomial& b) {
    a += b;
    return a;
  }
  friend BinaryPolynomial operator*(const BinaryPolynomial& a, const BinaryPolynomial& b);
  friend bool operator==(const BinaryPolynomial&, const BinaryPolynomial&) = default;

 private:
  explicit BinaryPolynomial(std::vector<std::uint64_t> words);
  void trim();

  std::vector<std::uint64_t> words_;
};

struct DivRem {
  BinaryPolynomial quotient;
  BinaryPolynomial remainder;
};

// Throws ParameterError when divisor is zero.
DivRem divrem(const BinaryPolynomial& dividend, const BinaryPolynomial& divisor);

// x^deg f * f(1/x). Requires a nonzero constant term so the degree is kept.
BinaryPolynomial reciprocal(const BinaryPolynomial& f);

BinaryPolynomial gcd(BinaryPolynomial a, BinaryPolynomial b);
BinaryPolynomial mulmod(const BinaryPolynomial& a, const BinaryPolynomial& b,
                        const BinaryPolynomial& modulus);
BinaryPolynomial powmod(const BinaryPolynomial& base, std::uint64_t exponent,
                        const BinaryPolynomial& modulus);

bool is_irreducible(const BinaryPolynomial& f);
bool is_primitive(const BinaryPolynomial& f);

// Distinct prime factors in increasing order, by trial division.
std::vector<std::uint64_t> prime_factors(std::uint64_t value);

inline constexpr unsigned kMinFieldDegree = 2;
inline constexpr unsigned kMaxFieldDegree = 32;

// Tabulated primitive polynomial of degree m, m in [2, 32].
const BinaryPolynomial& default_primitive(unsigned m);

struct FieldElement {
  std::uint64_t bits = 0;
  friend bool operator==(FieldElement, FieldElement) = default;
};

// GF(2^m) in polynomial basis over a primitive modulus; alpha is the class of x.
class FieldGF2m {
 public:
  // Throws ParameterError unless modulus has degree m and is primitive.
  FieldGF2m(unsigned m, BinaryPolynomial modulus);

  unsigned degree() const { return m_; }
  const BinaryPolynomial& modulus() const { return modulus_; }
  std::uint64_t order() const { return (std::uint64_t{1} << m_) - 1; }

  FieldElement zero() const { return {0}; }
  FieldElement one() const { return {1}; }
  FieldElement alpha() const { return {2}; }
  FieldElement alpha_pow(std::uint64_t k) const { return pow(alpha(), k); }

  FieldElement add(FieldElement a, FieldElement b) const { return {a.bits ^ b.bits}; }
  FieldElement mul(FieldElement a, FieldElement b) const;
  FieldElement square(FieldElement a) const { return mul(a, a); }
  FieldElement pow(FieldElement a, std::uint64_t k) const;

  // Multiplicative order of a nonzero element.
  std::uint64_t element_order(FieldElement a) const;
  // Substitutes e into a binary polynomial.
  FieldElement evaluate(const BinaryPolynomial& p, FieldElement e) const;

 private:
  unsigned m_;
  BinaryPolynomial modulus_;
  std::uint64_t reduction_;  // modulus without its leading term
};

// Product of (x - c) over the Frobenius conjugates c of e.
// Throws ConsistencyError if a coefficient falls outside GF(2).
BinaryPolynomial minimal_polynomial(const FieldGF2m& field, FieldElement e);

}  // namespace pwig
