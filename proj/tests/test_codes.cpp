#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "pwig/codes.hpp"
#include "pwig/error.hpp"

using pwig::BinaryPolynomial;

namespace {

BinaryPolynomial P(std::initializer_list<std::size_t> e) { return BinaryPolynomial::from_exponents(e); }

using Bits = std::vector<std::uint8_t>;

Bits bits_of(const char* s) {
  Bits b;
  for (; *s; ++s) b.push_back(static_cast<std::uint8_t>(*s - '0'));
  return b;
}

Bits cyclic_shift(const Bits& v, std::size_t k) {
  Bits out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[(i + k) % v.size()] = v[i];
  return out;
}

int inner(const Bits& a, const Bits& b) {
  int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s ^= a[i] & b[i];
  return s;
}

std::vector<Bits> dual_words(const pwig::BchCode& code) {
  std::vector<Bits> out;
  for (const auto& w : pwig::enumerate_dual_codewords(code)) out.push_back(w.bits());
  return out;
}

// Primal code words as message * g over all messages of degree < k.
std::vector<Bits> primal_words(const pwig::BchCode& code) {
  std::vector<Bits> out;
  for (std::uint64_t u = 0; u < (std::uint64_t{1} << code.k); ++u)
    out.push_back((BinaryPolynomial::from_word(u) * code.generator).bits(code.n));
  return out;
}

}  // namespace

TEST_CASE("code parameters") {
  auto p = pwig::code_params(4, 5);
  CHECK(p.n == 15);
  CHECK(p.k == 7);
  CHECK(p.k_dual == 8);
  CHECK(p.t == 2);

  p = pwig::code_params(3, 3);
  CHECK((p.n == 7 && p.k == 4 && p.k_dual == 3 && p.t == 1));

  p = pwig::code_params(18, 3);
  CHECK((p.n == 262143 && p.k == 262125 && p.k_dual == 18 && p.t == 1));

  CHECK_THROWS_AS(pwig::code_params(2, 9), pwig::ParameterError);
  CHECK_THROWS_AS(pwig::code_params(4, 4), pwig::ParameterError);
  CHECK_THROWS_AS(pwig::code_params(4, 1), pwig::ParameterError);
  CHECK_THROWS_AS(pwig::code_params(4, 7), pwig::ParameterError);
  CHECK_THROWS_AS(pwig::code_params(33, 3), pwig::ParameterError);
  CHECK_NOTHROW(pwig::code_params(6, 7));
}

TEST_CASE("generator polynomials") {
  pwig::FieldGF2m f4(4, P({4, 1, 0}));
  CHECK(pwig::bch_generator(f4, 5) == P({8, 7, 6, 4, 0}));
  CHECK(pwig::bch_generator(f4, 3) == P({4, 1, 0}));
  pwig::FieldGF2m f3(3, P({3, 1, 0}));
  CHECK(pwig::bch_generator(f3, 3) == P({3, 1, 0}));
}

TEST_CASE("check polynomials") {
  CHECK(pwig::dual_check_poly(P({3, 1, 0}), 7) == P({4, 3, 2, 0}));
  CHECK(pwig::dual_check_poly(P({8, 7, 6, 4, 0}), 15).degree() == 7u);
  CHECK_THROWS_AS(pwig::dual_check_poly(P({2, 0}), 7), pwig::ConsistencyError);
}

TEST_CASE("dual codewords of the [7,3] simplex code") {
  const auto code = pwig::make_bch_code(3, 3, P({3, 1, 0}));
  CHECK(pwig::dual_codeword(code, P({0})).bits() == bits_of("1011100"));
  CHECK(pwig::dual_codeword(code, P({1})).bits() == bits_of("0101110"));
  CHECK(pwig::dual_codeword(code, BinaryPolynomial{}).bits() == bits_of("0000000"));

  const Bits msg{1, 0, 0};
  CHECK(pwig::dual_codeword(code, msg).bits() == bits_of("1011100"));
  const Bits short_msg{1, 0};
  CHECK_THROWS_AS(pwig::dual_codeword(code, short_msg), pwig::ParameterError);
  CHECK_THROWS_AS(pwig::dual_codeword(code, P({3})), pwig::ParameterError);
}

TEST_CASE("enumeration") {
  const auto simplex = pwig::make_bch_code(3, 3, P({3, 1, 0}));
  const auto words = dual_words(simplex);
  REQUIRE(words.size() == 8);
  CHECK(words[0] == Bits(7, 0));
  std::set<Bits> shifts;
  for (std::size_t k = 0; k < 7; ++k) shifts.insert(cyclic_shift(bits_of("1011100"), k));
  for (std::size_t i = 1; i < 8; ++i) {
    CHECK(std::count(words[i].begin(), words[i].end(), 1) == 4);
    CHECK(shifts.count(words[i]) == 1);
  }
  CHECK(std::set<Bits>(words.begin(), words.end()).size() == 8);

  const auto bch = pwig::make_bch_code(4, 5, P({4, 1, 0}));
  CHECK(pwig::enumerate_dual_codewords(bch).size() == 256);
  CHECK(dual_words(bch).size() == 256);

  // a forged dimension of 30 trips the guard
  auto big = pwig::make_bch_code(6, 3, pwig::default_primitive(6));
  big.k_dual = 30;
  CHECK_THROWS_AS(pwig::enumerate_dual_codewords(big), pwig::ParameterError);
}

TEST_CASE("LFSR m-sequences") {
  CHECK(pwig::lfsr_msequence(P({3, 1, 0}), 0b100) == bits_of("0010111"));
  CHECK_THROWS_AS(pwig::lfsr_msequence(P({3, 1, 0}), 0), pwig::ParameterError);
  CHECK_THROWS_AS(pwig::lfsr_msequence(P({4, 3, 2, 1, 0}), 1), pwig::ParameterError);

  for (unsigned m = 2; m <= 16; ++m) {
    const auto seq = pwig::lfsr_msequence(pwig::default_primitive(m), 1);
    REQUIRE(seq.size() == (std::size_t{1} << m) - 1);
    CHECK(static_cast<std::size_t>(std::count(seq.begin(), seq.end(), 1)) == std::size_t{1} << (m - 1));
  }
}

TEST_CASE("x^18 + x^7 + 1 drives a period 262143 register") {
  const auto prim = P({18, 7, 0});
  const std::uint64_t period = 262143;
  const auto seq = pwig::lfsr_sequence(prim, 1, period + 18);
  // first return of the 18-bit window
  std::uint64_t first_return = 0;
  for (std::uint64_t s = 1; s <= period; ++s) {
    if (std::equal(seq.begin(), seq.begin() + 18, seq.begin() + static_cast<std::ptrdiff_t>(s))) {
      first_return = s;
      break;
    }
  }
  CHECK(first_return == period);
  CHECK(static_cast<std::uint64_t>(std::count(seq.begin(), seq.begin() + period, 1)) == period / 2 + 1);
}

TEST_CASE("minimum distance by brute force") {
  CHECK(pwig::min_distance_bruteforce(P({3, 1, 0}), 7) == 3);
  CHECK(pwig::min_distance_bruteforce(P({8, 7, 6, 4, 0}), 15) == 5);
  CHECK(pwig::min_distance_bruteforce(P({4, 3, 2, 0}), 7) == 4);
  CHECK_THROWS_AS(pwig::min_distance_bruteforce(P({1, 0}), 63), pwig::ParameterError);
}

TEST_CASE("minimum distance reaches the designed distance for m <= 5") {
  for (unsigned m = 2; m <= 5; ++m) {
    for (unsigned delta : {3u, 5u, 7u}) {
      try {
        pwig::code_params(m, delta);
      } catch (const pwig::ParameterError&) {
        continue;
      }
      CAPTURE(m);
      CAPTURE(delta);
      const auto code = pwig::make_bch_code(m, delta, pwig::default_primitive(m));
      CHECK(pwig::min_distance_bruteforce(code.generator, code.n) >= delta);
    }
  }
}

TEST_CASE("generator divides x^n + 1 and has degree m t for m <= 8") {
  for (unsigned m = 2; m <= 8; ++m) {
    for (unsigned delta = 3; delta <= 17; delta += 2) {
      pwig::CodeParams p;
      try {
        p = pwig::code_params(m, delta);
      } catch (const pwig::ParameterError&) {
        continue;
      }
      CAPTURE(m);
      CAPTURE(delta);
      const auto code = pwig::make_bch_code(m, delta, pwig::default_primitive(m));
      CHECK(code.generator.degree() == m * p.t);
      CHECK(pwig::divrem(P({p.n, 0}), code.generator).remainder.is_zero());
      CHECK(code.check.degree() == p.n - p.k_dual);
    }
  }
}

TEST_CASE("dual code is orthogonal to the primal code") {
  for (unsigned m = 2; m <= 4; ++m) {
    for (unsigned delta : {3u, 5u}) {
      try {
        pwig::code_params(m, delta);
      } catch (const pwig::ParameterError&) {
        continue;
      }
      const auto code = pwig::make_bch_code(m, delta, pwig::default_primitive(m));
      const auto dual = dual_words(code);
      const auto primal = primal_words(code);
      bool all_orthogonal = true;
      for (const auto& d : dual)
        for (const auto& c : primal) all_orthogonal &= inner(d, c) == 0;
      CHECK(all_orthogonal);
    }
  }
  // m = 5: every dual word against the primal basis x^i g(x), i < k
  for (unsigned delta : {3u, 5u}) {
    const auto code = pwig::make_bch_code(5, delta, pwig::default_primitive(5));
    const auto dual = dual_words(code);
    bool all_orthogonal = true;
    for (std::uint64_t i = 0; i < code.k; ++i) {
      const auto row = code.generator.shifted(i).bits(code.n);
      for (const auto& d : dual) all_orthogonal &= inner(d, row) == 0;
    }
    CHECK(all_orthogonal);
    CHECK(dual.size() == (std::size_t{1} << code.k_dual));
  }
}

TEST_CASE("dual codeword map is linear") {
  const auto code = pwig::make_bch_code(10, 5, pwig::default_primitive(10));
  std::mt19937_64 rng(17);
  const std::uint64_t mask = (std::uint64_t{1} << code.k_dual) - 1;
  for (int i = 0; i < 100; ++i) {
    const std::uint64_t a = rng() & mask, b = rng() & mask;
    const auto ca = pwig::dual_codeword(code, BinaryPolynomial::from_word(a));
    const auto cb = pwig::dual_codeword(code, BinaryPolynomial::from_word(b));
    const auto cab = pwig::dual_codeword(code, BinaryPolynomial::from_word(a ^ b));
    CHECK(cab.poly == ca.poly + cb.poly);
  }
}

TEST_CASE("shifts of one m-sequence form the simplex code for m <= 6") {
  for (unsigned m = 2; m <= 6; ++m) {
    const auto code = pwig::make_bch_code(m, 3, pwig::default_primitive(m));
    const auto seq = pwig::lfsr_msequence(code.primitive, 1);
    std::set<Bits> from_lfsr{Bits(code.n, 0)};
    for (std::size_t k = 0; k < code.n; ++k) from_lfsr.insert(cyclic_shift(seq, k));
    const auto dual = dual_words(code);
    CHECK(std::set<Bits>(dual.begin(), dual.end()) == from_lfsr);
  }
}

TEST_CASE("LFSR prefix path matches the polynomial product") {
  for (unsigned m : {3u, 5u, 9u, 12u, 18u}) {
    const auto code = pwig::make_bch_code(m, 3, pwig::default_primitive(m));
    std::mt19937_64 rng(m);
    for (int i = 0; i < 5; ++i) {
      const auto v = BinaryPolynomial::from_word(rng() & ((std::uint64_t{1} << m) - 1));
      const std::uint64_t count = std::min<std::uint64_t>(code.n, 5000);
      CHECK(pwig::dual_codeword_prefix(code, v, count) == pwig::dual_codeword(code, v).poly.bits(count));
    }
  }
  const auto bch = pwig::make_bch_code(8, 5, pwig::default_primitive(8));
  const auto v = BinaryPolynomial::from_word(0xbeef);
  CHECK(pwig::dual_codeword_prefix(bch, v, 100) == pwig::dual_codeword(bch, v).poly.bits(100));
  CHECK_THROWS_AS(pwig::dual_codeword_prefix(bch, v, bch.n + 1), pwig::ParameterError);
}

TEST_CASE("codeword file export") {
  const auto dir = std::filesystem::path(PWIG_TEST_TMP);
  std::filesystem::create_directories(dir);
  const auto code = pwig::make_bch_code(3, 3, P({3, 1, 0}));
  const auto word = pwig::dual_codeword(code, P({0}));
  const auto path = dir / "simplex.bin";
  pwig::write_codeword_file(path, code, word);

  std::ifstream in(path, std::ios::binary);
  std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 1);
  CHECK(static_cast<unsigned char>(bytes[0]) == 0x1d);  // 1011100 little-endian

  std::ifstream hdr(path.string() + ".hdr");
  std::string text((std::istreambuf_iterator<char>(hdr)), std::istreambuf_iterator<char>());
  CHECK(text.find("primitive: 0xb\n") != std::string::npos);
  CHECK(text.find("message: 0x1\n") != std::string::npos);
  CHECK(text.find("length: 7\n") != std::string::npos);
}
