#pragma once

// Primitive narrow-sense binary BCH codes and their duals.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iterator>
#include <optional>
#include <span>
#include <vector>

#include "pwig/gf2.hpp"

namespace pwig {

struct CodeParams {
  std::uint64_t n = 0;       // 2^m - 1
  std::uint64_t k = 0;       // n - m t
  std::uint64_t k_dual = 0;  // m t
  unsigned t = 0;            // (delta - 1) / 2
};

// Dimensions of the BCH code of length 2^m - 1 and designed distance delta.
// Only the regime 1 <= 2t - 1 < 2^floor(m/2) + 1, where the dimension formula
// is guaranteed, is accepted; anything else throws ParameterError.
CodeParams code_params(unsigned m, unsigned delta);

// lcm of the minimal polynomials of alpha, ..., alpha^(delta-1).
BinaryPolynomial bch_generator(const FieldGF2m& field, unsigned delta);

// (x^n + 1) / reciprocal(generator). Throws ConsistencyError when the division
// is not exact and ParameterError when the generator has a zero constant term.
BinaryPolynomial dual_check_poly(const BinaryPolynomial& generator, std::uint64_t n);

struct BchCode {
  unsigned m = 0;
  unsigned delta = 0;
  unsigned t = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  std::uint64_t k_dual = 0;
  BinaryPolynomial primitive;
  BinaryPolynomial generator;
  BinaryPolynomial check;
};

// Full construction: field, generator, dual check polynomial.
BchCode make_bch_code(const FieldGF2m& field, unsigned delta);
BchCode make_bch_code(unsigned m, unsigned delta, const BinaryPolynomial& primitive);

struct DualCodeword {
  BinaryPolynomial message;  // v(x), degree < k_dual
  BinaryPolynomial poly;     // v(x) h(x), degree < n
  std::uint64_t length = 0;

  bool bit(std::uint64_t i) const { return poly.coeff(i); }
  std::vector<std::uint8_t> bits() const { return poly.bits(length); }
};

// Codeword with polynomial v(x) h(x). The message polynomial must have degree
// below k_dual; the span overload requires exactly k_dual bits.
DualCodeword dual_codeword(const BchCode& code, const BinaryPolynomial& message);
DualCodeword dual_codeword(const BchCode& code, std::span<const std::uint8_t> message_bits);

// First `count` bits of the dual codeword for `message`. For delta = 3 this
// runs the LFSR recurrence seeded with the codeword's first m bits instead of
// forming v(x) h(x).
std::vector<std::uint8_t> dual_codeword_prefix(const BchCode& code, const BinaryPolynomial& message,
                                               std::uint64_t count);

inline constexpr std::uint64_t kMaxEnumeratedDualDim = 24;

// All 2^k_dual dual codewords in increasing message order.
class DualCodewordRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = DualCodeword;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    iterator(const BchCode* code, std::uint64_t index) : code_(code), index_(index) {}

    DualCodeword operator*() const;
    iterator& operator++() {
      ++index_;
      return *this;
    }
    void operator++(int) { ++index_; }
    friend bool operator==(const iterator& a, const iterator& b) { return a.index_ == b.index_; }

   private:
    const BchCode* code_ = nullptr;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return {code_, 0}; }
  iterator end() const { return {code_, std::uint64_t{1} << code_->k_dual}; }
  std::uint64_t size() const { return std::uint64_t{1} << code_->k_dual; }

 private:
  friend DualCodewordRange enumerate_dual_codewords(const BchCode& code);
  explicit DualCodewordRange(const BchCode* code) : code_(code) {}
  const BchCode* code_;
};

// The range refers to `code`, which must outlive it. Throws ParameterError
// when k_dual exceeds kMaxEnumeratedDualDim.
DualCodewordRange enumerate_dual_codewords(const BchCode& code);

// Fibonacci LFSR: s[k+m] = sum over i < m of prim_i * s[k+i]. Bit i of
// `initial_state` is s_i. Returns one full period, 2^m - 1 bits.
std::vector<std::uint8_t> lfsr_msequence(const BinaryPolynomial& primitive,
                                         std::uint64_t initial_state = 1);

// Same recurrence, arbitrary output length.
std::vector<std::uint8_t> lfsr_sequence(const BinaryPolynomial& feedback, std::uint64_t initial_state,
                                        std::uint64_t count);

inline constexpr std::uint64_t kMaxBruteForceDim = 26;

// Minimum Hamming weight of the cyclic code of length n generated by
// `generator`, by enumerating every codeword. Requires n <= 64 and
// dimension <= kMaxBruteForceDim.
unsigned min_distance_bruteforce(const BinaryPolynomial& generator, std::uint64_t n);

// Raw codeword export: packed little-endian bytes (bit i of the codeword is
// bit i%8 of byte i/8) plus a "<path>.hdr" sidecar of key: value lines.
void write_codeword_file(const std::filesystem::path& path, const BchCode& code,
                         const DualCodeword& word);

}  // namespace pwig
