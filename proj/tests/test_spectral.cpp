#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pwig/error.hpp"
#include "pwig/spectral.hpp"

using Signs = std::vector<std::int8_t>;

namespace {

pwig::ScaledSignMatrix ones(std::size_t n) { return pwig::build_matrix(Signs(pwig::triangle_size(n), 1), n); }

}  // namespace

TEST_CASE("closed-form spectra") {
  const auto m = pwig::build_matrix(Signs{1, -1, 1}, 2);
  const auto s = pwig::eigenvalues_sym(m);
  REQUIRE(s.size() == 2);
  CHECK(std::abs(s.eigenvalues[0]) < 1e-15);
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  for (std::size_t n : {1u, 3u, 10u, 64u}) {
    const auto e = pwig::eigenvalues_sym(ones(n)).eigenvalues;
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(std::abs(e[i]) < 1e-12);
    CHECK(e.back() == doctest::Approx(std::sqrt(static_cast<double>(n)) / 2).epsilon(1e-13));
  }
}

TEST_CASE("eigenvalues of N = 6 sign matrices match the characteristic polynomial") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = pwig::sample_random_wigner(6, seed);
    const auto eig = pwig::eigenvalues_sym(m).eigenvalues;
    std::vector<std::int64_t> s(36);
    for (std::size_t i = 0; i < 36; ++i) s[i] = m.signs()[i];
    const auto exact = oracle::charpoly(s, 6);
    // eigenvalues of the integer matrix are 2 sqrt(6) times those of the scaled one
    std::vector<long double> mu;
    for (double l : eig) mu.push_back(l * 2.0L * std::sqrt(6.0L));
    const auto rebuilt = oracle::poly_from_roots(mu);
    for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(rebuilt[k] - exact[k]) < 1e-8);
  }
}

TEST_CASE("eigenvalues of a generic N = 6 matrix match a root finder") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> a(36);
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j <= i; ++j) a[i * 6 + j] = a[j * 6 + i] = u(rng);
    const auto eig = pwig::eigenvalues_sym(a, 6).eigenvalues;
    const auto roots = oracle::real_roots(oracle::charpoly_real(a, 6), -7.0, 7.0, 200000);
    REQUIRE(roots.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(eig[i] - roots[i]) < 1e-10);
  }
}

TEST_CASE("trace identities on generated matrices") {
  for (std::size_t n : {2u, 5u, 20u, 50u, 121u}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto m = pwig::sample_random_wigner(n, seed);
      const auto eig = pwig::eigenvalues_sym(m).eigenvalues;
      CHECK(std::is_sorted(eig.begin(), eig.end()));
      double sum = 0.0, sum2 = 0.0, trace = 0.0;
      for (double l : eig) {
        sum += l;
        sum2 += l * l;
      }
      for (std::size_t i = 0; i < n; ++i) trace += m.value(i, i);
      CHECK(std::abs(sum - trace) <= 1e-9 * n);
      CHECK(std::abs(sum2 - n / 4.0) <= 1e-9 * n);
    }
  }
}

TEST_CASE("empirical cdf") {
  pwig::Spectrum s{{0.0, 1.0 / std::sqrt(2.0)}};
  CHECK(pwig::empirical_cdf(s, -0.1) == 0.0);
  CHECK(pwig::empirical_cdf(s, 0.0) == 0.5);
  CHECK(pwig::empirical_cdf(s, 1.0) == 1.0);
  CHECK(pwig::empirical_cdf(s, 1.0 / std::sqrt(2.0)) == 1.0);
}

TEST_CASE("trace moments") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto m = pwig::sample_random_wigner(9 + seed, seed);
    CHECK(pwig::moment_trace(m, 2) == 0.25);
  }
  for (std::size_t n : {2u, 7u, 30u}) {
    CHECK(pwig::moment_trace(ones(n), 1) == doctest::Approx(1.0 / (2.0 * std::sqrt(double(n)))).epsilon(1e-15));
    // Tr J^l = N^l, so beta_l = N^(l/2 - 1) / 2^l
    for (unsigned l = 1; l <= 12; ++l)
      CHECK(pwig::moment_trace(ones(n), l) ==
            doctest::Approx(std::pow(double(n), l / 2.0 - 1.0) / std::pow(2.0, l)).epsilon(1e-13));
  }
  const auto m5 = pwig::sample_random_wigner(5, 42);
  double s4 = 0.0;
  for (double l : pwig::eigenvalues_sym(m5).eigenvalues) s4 += std::pow(l, 4);
  CHECK(std::abs(pwig::moment_trace(m5, 4) - s4 / 5) < 1e-10);

  CHECK_THROWS_AS(pwig::moment_trace(m5, 0), pwig::ParameterError);
  CHECK_THROWS_AS(pwig::moment_trace(m5, 21), pwig::ParameterError);
}

TEST_CASE("exact traces agree with eigenvalue power sums for l <= 8, N <= 50") {
  for (std::size_t n : {3u, 8u, 17u, 33u, 50u}) {
    for (std::uint64_t seed = 0; seed < 2; ++seed) {
      const auto m = pwig::sample_random_wigner(n, 100 + seed);
      const auto eig = pwig::eigenvalues_sym(m).eigenvalues;
      const auto beta = pwig::trace_moments(m, 8);
      for (unsigned l = 1; l <= 8; ++l) {
        long double sum = 0.0L;
        for (double x : eig) sum += std::pow(static_cast<long double>(x), static_cast<int>(l));
        CAPTURE(n);
        CAPTURE(l);
        CHECK(std::abs(beta[l - 1] - static_cast<double>(sum / n)) < 1e-8);
      }
    }
  }
}

TEST_CASE("exact trace powers and the floating fallback") {
  const auto m = pwig::sample_random_wigner(4, 3);
  // direct Tr S^3 = sum_ijk s_ij s_jk s_ki
  long long direct = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t k = 0; k < 4; ++k) direct += m.sign(i, j) * m.sign(j, k) * m.sign(k, i);
  const auto t3 = pwig::trace_power_exact(m, 3);
  REQUIRE(t3.has_value());
  CHECK(static_cast<long long>(*t3) == direct);

  // N = 1000: l log2 N exceeds 125 from l = 13 on
  const auto big = pwig::sample_random_wigner(1000, 1);
  const auto exact = pwig::trace_powers_exact(big, 14);
  CHECK(exact[11].has_value());
  CHECK_FALSE(exact[12].has_value());
  CHECK(pwig::moment_trace(big, 14) > 0.0);
}

TEST_CASE("semicircle law") {
  CHECK(pwig::semicircle_cdf(0.0) == 0.5);
  CHECK(pwig::semicircle_cdf(1.0) == 1.0);
  CHECK(pwig::semicircle_cdf(-1.0) == 0.0);
  CHECK(pwig::semicircle_cdf(0.5) == doctest::Approx(0.8044988905221148).epsilon(1e-14));
  CHECK(pwig::semicircle_cdf(-3.0) == 0.0);
  CHECK(pwig::semicircle_cdf(3.0) == 1.0);

  CHECK(pwig::semicircle_pdf(0.0) == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(pwig::semicircle_pdf(1.0) == 0.0);
  CHECK(pwig::semicircle_pdf(-1.0) == 0.0);
  CHECK(std::abs(oracle::integrate_on_arc(pwig::semicircle_pdf) - 1.0) < 1e-10);

  CHECK(pwig::semicircle_moment(0) == 1.0);
  CHECK(pwig::semicircle_moment(2) == 0.25);
  CHECK(pwig::semicircle_moment(4) == 0.125);
  CHECK(pwig::semicircle_moment(6) == 5.0 / 64);
  CHECK(pwig::semicircle_moment(3) == 0.0);
  for (unsigned l = 0; l <= 12; ++l) {
    const double q =
        oracle::integrate_on_arc([l](double x) { return std::pow(x, static_cast<int>(l)) * pwig::semicircle_pdf(x); });
    CAPTURE(l);
    CHECK(std::abs(pwig::semicircle_moment(l) - q) < 1e-10);
  }
}

TEST_CASE("semicircle cdf is monotone and differentiates to the pdf") {
  const int points = 100000;
  double prev = -1.0;
  bool monotone = true;
  for (int i = 0; i <= points; ++i) {
    const double x = -1.2 + 2.4 * i / points;
    const double f = pwig::semicircle_cdf(x);
    monotone &= f >= prev;
    prev = f;
  }
  CHECK(monotone);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 1; i < 1000; ++i) {
    const double x = -0.99 + 1.98 * i / 1000;
    const double d = (pwig::semicircle_cdf(x + h) - pwig::semicircle_cdf(x - h)) / (2 * h);
    worst = std::max(worst, std::abs(d - pwig::semicircle_pdf(x)));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("Kolmogorov distance") {
  const std::vector<double> single{0.5};
  CHECK(pwig::kolmogorov_distance(single).distance == doctest::Approx(0.8044988905221148).epsilon(1e-14));
  const std::vector<double> left{-2.0};
  CHECK(pwig::kolmogorov_distance(left).distance == 1.0);

  const std::size_t n = 1000;
  std::vector<double> quantiles;
  for (std::size_t i = 1; i <= n; ++i) {
    // invert the cdf by bisection
    const double target = static_cast<double>(i) / (n + 1);
    double a = -1.0, b = 1.0;
    for (int it = 0; it < 100; ++it) {
      const double mid = (a + b) / 2;
      (oracle::semicircle_cdf(mid) < target ? a : b) = mid;
    }
    quantiles.push_back((a + b) / 2);
  }
  CHECK(pwig::kolmogorov_distance(quantiles).distance < 0.01);

  const auto with_r = pwig::kolmogorov_distance(quantiles, 2u);
  REQUIRE(with_r.threshold.has_value());
  CHECK(*with_r.threshold == 0.5);
  CHECK(*with_r.pass);
  CHECK_THROWS_AS(pwig::kolmogorov_distance(quantiles, 0u), pwig::ParameterError);
}

TEST_CASE("Kolmogorov distance ignores input order") {
  std::mt19937_64 rng(12);
  auto eig = pwig::eigenvalues_sym(pwig::sample_random_wigner(80, 9)).eigenvalues;
  const auto base = pwig::kolmogorov_distance(eig);
  for (int t = 0; t < 10; ++t) {
    std::shuffle(eig.begin(), eig.end(), rng);
    const auto r = pwig::kolmogorov_distance(eig);
    CHECK(r.distance == base.distance);
    CHECK(r.argmax == base.argmax);
  }
}

TEST_CASE("exact Kolmogorov distance against a fine grid scan") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const std::size_t n = 20 + 18 * seed;
    const auto eig = pwig::eigenvalues_sym(pwig::sample_random_wigner(n, seed)).eigenvalues;
    const double exact = pwig::kolmogorov_distance(eig).distance;
    const double lo = std::min(eig.front(), -1.0), hi = std::max(eig.back(), 1.0);
    const std::size_t points = 1000000;
    const auto coarse = oracle::ks_grid_scan(eig, lo, hi, points);
    const auto fine = oracle::ks_refined_scan(eig, lo, hi, points);
    CAPTURE(n);
    // a grid can only undershoot, by at most max pdf * step
    CHECK(coarse.distance <= exact + 1e-15);
    CHECK(exact - coarse.distance <= 2.0 / std::numbers::pi * (hi - lo) / (points - 1));
    CHECK(fine.distance <= exact + 1e-15);
    CHECK(exact - fine.distance < 1e-6);
  }
}

TEST_CASE("histograms") {
  const std::vector<double> values{-1.0, -0.5, 0.0, 0.25, 0.5, 1.0, 2.0};
  const auto h = pwig::make_histogram(values, -1.0, 1.0, 4);
  CHECK(h.total == 7);
  CHECK(h.outside == 1);
  CHECK(h.bin_width() == 0.5);
  CHECK(h.density[0] == doctest::Approx(1.0 / 3.5));
  CHECK(h.density[3] == doctest::Approx(2.0 / 3.5));
  CHECK(h.mass() == doctest::Approx(6.0 / 7.0));
  CHECK_THROWS_AS(pwig::make_histogram(values, 1.0, -1.0, 4), pwig::ParameterError);
}
