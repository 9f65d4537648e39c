#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "pwig/cli.hpp"
#include "pwig/report.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = pwig::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(PWIG_TEST_TMP);
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string field(const std::string& report, const std::string& key) {
  for (const auto& [k, v] : pwig::parse_report(report))
    if (k == key) return v;
  return "<missing>";
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#' && line[0] != '%') lines.push_back(line);
  return lines;
}

const std::string k2x2 =
    "%%MatrixMarket matrix coordinate integer symmetric\n"
    "2 2 3\n1 1 1\n2 1 -1\n2 2 1\n";

}  // namespace

TEST_CASE("gen records the ensemble parameters") {
  const auto r = run({"gen", "--order", "700", "--delta", "3", "--seed", "1", "--format", "mm"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("%%MatrixMarket matrix coordinate integer symmetric\n", 0) == 0);
  CHECK(r.out.find("% m: 18\n") != std::string::npos);
  CHECK(r.out.find("% primitive: 0x40081\n") != std::string::npos);
  CHECK(r.out.find("% fill_order: upper-triangle-row-major\n") != std::string::npos);
  CHECK(r.out.find("\n700 700 245350\n") != std::string::npos);
}

TEST_CASE("zero message gives the all-ones matrix") {
  const auto r = run({"gen", "--order", "3", "--delta", "3", "--message", "0x0"});
  REQUIRE(r.code == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 7);
  CHECK(lines[0] == "3 3 6");
  for (std::size_t i = 1; i < lines.size(); ++i) CHECK(lines[i].substr(lines[i].size() - 2) == " 1");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"gen", "--order", "2", "--delta", "9", "--seed", "1"}).code == 2);
  CHECK(run({"gen", "--order", "5"}).code == 2);
  CHECK(run({"gen", "--order", "5", "--seed", "1", "--message", "0x1"}).code == 2);
  CHECK(run({"verify", "--test", "nonsense"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  const auto missing = run({"spectrum", "--input", scratch("does_not_exist.mtx").string()});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("spectrum of the 2x2 example") {
  const auto path = scratch("m22.mtx");
  spit(path, k2x2);
  const auto a = run({"spectrum", "--input", path.string()});
  REQUIRE(a.code == 0);
  CHECK(data_lines(a.out) == std::vector<std::string>{"0", "0.70710678118654757"});
  const auto b = run({"spectrum", "--input", path.string()});
  CHECK(a.out == b.out);

  spit(path, "%%MatrixMarket matrix coordinate integer symmetric\n2 2 3\n1 1 1\n2 1 -1\n");
  CHECK(run({"spectrum", "--input", path.string()}).code == 2);
}

TEST_CASE("ks reads matrices and spectra") {
  const auto mtx = scratch("ks.mtx");
  REQUIRE(run({"gen", "--order", "40", "--delta", "3", "--seed", "3", "--output", mtx.string()}).code == 0);
  const auto spec = scratch("ks.txt");
  REQUIRE(run({"spectrum", "--input", mtx.string(), "--output", spec.string()}).code == 0);
  CHECK(slurp(spec).find("# matrix.order: 40\n") != std::string::npos);

  const auto from_matrix = run({"ks", "--input", mtx.string()});
  const auto from_spectrum = run({"ks", "--input", spec.string()});
  REQUIRE(from_matrix.code == 0);
  CHECK(from_matrix.out == from_spectrum.out);
  CHECK(field(from_matrix.out, "pass") == "<missing>");

  const auto loose = run({"ks", "--input", spec.string(), "--r", "2"});
  CHECK(loose.code == 0);
  CHECK(field(loose.out, "pass") == "true");
  const auto tight = run({"ks", "--input", spec.string(), "--r", "1000"});
  CHECK(tight.code == 1);
  CHECK(field(tight.out, "pass") == "false");
}

TEST_CASE("verify independence") {
  const auto ok = run({"verify", "--test", "independence", "--m", "3", "--delta", "3", "--r", "2"});
  CHECK(ok.code == 0);
  CHECK(field(ok.out, "pass") == "true");
  const auto bad = run({"verify", "--test", "independence", "--m", "3", "--delta", "3", "--r", "3"});
  CHECK(bad.code == 1);
  CHECK(field(bad.out, "pass") == "false");
}

TEST_CASE("verify variance exhaustively") {
  const auto r = run({"verify", "--test", "variance", "--order", "2", "--exhaustive"});
  REQUIRE(r.code == 0);
  CHECK(field(r.out, "exact_rational") == "3/16");
  CHECK(field(r.out, "closed_form_rational") == "3/16");
  const auto e1 = run({"verify", "--test", "variance", "--order", "3", "--exhaustive", "--vector", "e1"});
  REQUIRE(e1.code == 0);
  CHECK(field(e1.out, "exact_rational") == "1/12");
}

TEST_CASE("verify quasirandom on a file") {
  const auto path = scratch("ones.mtx");
  REQUIRE(run({"gen", "--order", "16", "--delta", "3", "--message", "0x0", "--output", path.string()}).code == 0);
  const auto r = run({"verify", "--test", "quasirandom", "--input", path.string()});
  CHECK(r.code == 1);
  CHECK(std::stod(field(r.out, "lambda1")) == doctest::Approx(16.0).epsilon(1e-12));
}

TEST_CASE("fig1 output is deterministic") {
  const auto dir_a = scratch("fig1_a"), dir_b = scratch("fig1_b");
  const std::vector<std::string> base{"fig1", "--order", "60", "--count", "2", "--seed", "7", "--bins", "22"};
  auto args_a = base, args_b = base;
  args_a.insert(args_a.end(), {"--output-dir", dir_a.string()});
  args_b.insert(args_b.end(), {"--output-dir", dir_b.string()});
  const auto a = run(args_a);
  const auto b = run(args_b);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(std::abs(std::stod(field(a.out, "average_histogram_mass")) - 1.0) < 1e-9);
  CHECK(field(a.out, "eigenvalues_outside_range") == "0");
  for (const char* name : {"ks_summary.csv", "histograms.csv", "average_histogram.csv", "semicircle.csv",
                           "spectra/spectrum_000.txt", "spectra/spectrum_001.txt"}) {
    const std::string ta = slurp(dir_a / name), tb = slurp(dir_b / name);
    CHECK_FALSE(ta.empty());
    // only the output directory in the recorded command line differs
    CHECK(data_lines(ta) == data_lines(tb));
  }
  CHECK(data_lines(slurp(dir_a / "spectra/spectrum_000.txt")).size() == 60);
}
