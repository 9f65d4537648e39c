#include "pwig/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pwig/codes.hpp"
#include "pwig/error.hpp"
#include "pwig/matgen.hpp"
#include "pwig/matrix_io.hpp"
#include "pwig/prng.hpp"
#include "pwig/report.hpp"
#include "pwig/spectral.hpp"
#include "pwig/stats.hpp"

namespace pwig {

namespace {

namespace fs = std::filesystem;

constexpr double kHistogramLo = -1.1;
constexpr double kHistogramHi = 1.1;
constexpr std::size_t kCurvePoints = 441;

struct Config {
  std::string command_line;

  std::size_t order = 0;
  unsigned delta = 3;
  std::optional<std::string> primitive_hex;
  std::optional<std::string> message_hex;
  std::optional<std::uint64_t> seed;
  std::uint64_t index = 0;
  std::string ensemble = "pseudo";
  std::string format = "mm";
  std::string output = "-";
  std::string input;

  std::string test;
  unsigned m = 0;
  unsigned r = 0;
  std::string mode = "exhaustive";
  std::uint64_t tuples = 20000;
  std::size_t count = 1;
  unsigned l_max = 2;
  bool exhaustive = false;
  std::string vector = "uniform";
  bool random_reference = false;

  std::string output_dir = "fig1";
  std::size_t bins = 50;
};

class OutputSink {
 public:
  OutputSink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary);
    if (!file_) throw Error("cannot open " + path + " for writing");
    stream_ = &file_;
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw Error("write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open input file " + path);
  return in;
}

Metadata base_metadata(const Config& c) {
  return {{"tool", "pwig"}, {"version", kToolVersion}, {"command", c.command_line}};
}

std::optional<BinaryPolynomial> primitive_override(const Config& c) {
  if (!c.primitive_hex) return std::nullopt;
  return BinaryPolynomial::from_hex(*c.primitive_hex);
}

void append_ensemble_metadata(Metadata& md, const EnsembleParams& p) {
  md.emplace_back("source", "pseudo-wigner");
  md.emplace_back("order", std::to_string(p.order));
  md.emplace_back("m", std::to_string(p.m));
  md.emplace_back("delta", std::to_string(p.delta));
  md.emplace_back("primitive", p.primitive.to_hex());
  md.emplace_back("fill_order", "upper-triangle-row-major");
}

int cmd_gen(const Config& c, std::ostream& out) {
  if (c.order < 2) throw ParameterError("--order must be at least 2");
  Metadata md = base_metadata(c);
  ScaledSignMatrix matrix;

  if (c.ensemble == "random") {
    if (!c.seed || c.message_hex) throw ParameterError("the random ensemble takes --seed and no --message");
    md.emplace_back("source", "random-wigner");
    md.emplace_back("order", std::to_string(c.order));
    md.emplace_back("seed", std::to_string(*c.seed));
    md.emplace_back("prng", "splitmix64-counter");
    matrix = sample_random_wigner(c.order, *c.seed);
  } else {
    if (c.seed.has_value() == c.message_hex.has_value())
      throw ParameterError("exactly one of --seed and --message is required");
    const EnsembleParams params = make_ensemble_params(c.order, c.delta, primitive_override(c));
    const PseudoWignerEnsemble ensemble(params);
    const BinaryPolynomial message =
        c.message_hex ? BinaryPolynomial::from_hex(*c.message_hex) : ensemble.random_message(*c.seed, c.index);
    append_ensemble_metadata(md, params);
    md.emplace_back("message", message.to_hex());
    if (c.seed) {
      md.emplace_back("seed", std::to_string(*c.seed));
      md.emplace_back("index", std::to_string(c.index));
    }
    if (c.format == "bits") {
      if (c.output == "-") throw ParameterError("--format bits needs --output");
      write_codeword_file(c.output, ensemble.code(), dual_codeword(ensemble.code(), message));
      return kExitOk;
    }
    matrix = ensemble.sample(message);
  }
  if (c.format == "bits") throw ParameterError("--format bits applies to the pseudo ensemble only");

  OutputSink sink(c.output, out);
  if (c.format == "csv") write_dense_csv(sink.stream(), matrix, md);
  else write_matrix_market(sink.stream(), matrix, md);
  sink.finish();
  return kExitOk;
}

void append_source_metadata(Metadata& md, const Metadata& source) {
  for (const auto& [k, v] : source)
    if (k != "tool" && k != "version") md.emplace_back("matrix." + k, v);
}

int cmd_spectrum(const Config& c, std::ostream& out) {
  auto in = open_input(c.input);
  const MatrixFile file = read_matrix_market(in);
  Metadata md = base_metadata(c);
  append_source_metadata(md, file.metadata);
  OutputSink sink(c.output, out);
  write_spectrum(sink.stream(), eigenvalues_sym(file.matrix), md);
  sink.finish();
  return kExitOk;
}

int cmd_ks(const Config& c, std::ostream& out) {
  std::string first;
  {
    auto probe = open_input(c.input);
    std::getline(probe, first);
  }
  auto in = open_input(c.input);
  Spectrum spectrum;
  if (first.rfind("%%MatrixMarket", 0) == 0) spectrum = eigenvalues_sym(read_matrix_market(in).matrix);
  else spectrum = read_spectrum(in);
  if (spectrum.eigenvalues.empty()) throw FormatError("no eigenvalues in " + c.input);

  const KsReport report = kolmogorov_distance(spectrum, c.r ? std::optional<unsigned>(c.r) : std::nullopt);
  OutputSink sink(c.output, out);
  sink.stream() << to_report(report);
  sink.finish();
  return report.pass.value_or(true) ? kExitOk : kExitCheckFailed;
}

std::vector<double> unit_vector(const std::string& name, std::size_t n) {
  std::vector<double> x(n, 0.0);
  if (name == "uniform") {
    std::fill(x.begin(), x.end(), 1.0 / std::sqrt(static_cast<double>(n)));
  } else if (name == "e1") {
    x[0] = 1.0;
  } else {
    throw ParameterError("--vector must be 'uniform' or 'e1'");
  }
  return x;
}

std::vector<Rational> unit_vector_squares(const std::string& name, std::size_t n) {
  std::vector<Rational> w(n, Rational{0, 1});
  if (name == "uniform") std::fill(w.begin(), w.end(), Rational::make(1, static_cast<Int128>(n)));
  else w[0] = Rational{1, 1};
  return w;
}

std::string rational_text(const Rational& q) {
  return std::to_string(static_cast<long long>(q.num)) + "/" + std::to_string(static_cast<long long>(q.den));
}

std::vector<ScaledSignMatrix> sample_matrices(const Config& c) {
  if (c.count == 0) throw ParameterError("--count must be positive");
  if (!c.seed) throw ParameterError("--seed is required");
  std::vector<ScaledSignMatrix> out;
  if (c.ensemble == "random") {
    for (std::size_t s = 0; s < c.count; ++s) out.push_back(sample_random_wigner(c.order, derive_key(*c.seed, s)));
    return out;
  }
  const PseudoWignerEnsemble ensemble(make_ensemble_params(c.order, c.delta, primitive_override(c)));
  for (std::size_t s = 0; s < c.count; ++s) out.push_back(ensemble.sample(ensemble.random_message(*c.seed, s)));
  return out;
}

int cmd_verify(const Config& c, std::ostream& out) {
  std::string text;
  bool pass = false;

  if (c.test == "independence") {
    const BinaryPolynomial prim = c.primitive_hex ? BinaryPolynomial::from_hex(*c.primitive_hex) : default_primitive(c.m);
    const BchCode code = make_bch_code(c.m, c.delta, prim);
    IndependenceOptions options;
    if (c.mode == "sampled") options.mode = IndependenceMode::sampled;
    else if (c.mode != "exhaustive") throw ParameterError("--mode must be 'exhaustive' or 'sampled'");
    options.sampled_tuples = c.tuples;
    options.seed = c.seed.value_or(1);
    const IndependenceReport report = test_r_independence(code, c.r, options);
    pass = report.pass;
    text = to_report(report);
  } else if (c.test == "moments") {
    const auto matrices = sample_matrices(c);
    const MomentReport report =
        test_moment_match(matrices, c.l_max, c.random_reference ? std::optional(derive_key(*c.seed, 0x5eed)) : std::nullopt);
    pass = report.pass;
    text = to_report(report);
  } else if (c.test == "quasirandom") {
    std::vector<ScaledSignMatrix> matrices;
    if (!c.input.empty()) {
      auto in = open_input(c.input);
      matrices.push_back(read_matrix_market(in).matrix);
    } else {
      matrices = sample_matrices(c);
    }
    pass = true;
    for (const auto& m : matrices) {
      const QuasiRandomReport report = quasirandom_check(m);
      pass = pass && report.pass;
      text += to_report(report);
    }
  } else if (c.test == "variance") {
    if (c.order < 1) throw ParameterError("--order is required");
    const auto x = unit_vector(c.vector, c.order);
    if (c.exhaustive) {
      const auto all = enumerate_sign_matrices(c.order);
      const VarianceReport report = quadratic_form_variance(all, x, true);
      const Rational exact = exact_quadratic_form_variance(all, unit_vector_squares(c.vector, c.order));
      const Rational closed_form =
          (Rational{2, 1} - [&] {
            Rational s;
            for (const Rational& w : unit_vector_squares(c.vector, c.order)) s = s + w * w;
            return s;
          }()) *
          Rational::make(1, 4 * static_cast<Int128>(c.order));
      pass = exact == closed_form && std::abs(report.estimate - exact.to_double()) <= 1e-12;
      text = to_report(report);
      text += "exact_rational: " + rational_text(exact) + "\n";
      text += "closed_form_rational: " + rational_text(closed_form) + "\n";
      text += "pass: " + std::string(pass ? "true" : "false") + "\n";
    } else {
      if (!c.seed) throw ParameterError("--seed is required for sampled variance");
      std::vector<ScaledSignMatrix> matrices;
      for (std::size_t s = 0; s < c.count; ++s) matrices.push_back(sample_random_wigner(c.order, derive_key(*c.seed, s)));
      const VarianceReport report = quadratic_form_variance(matrices, x, false);
      pass = std::abs(report.estimate - report.exact_reference) <= 3.0 * report.std_error;
      text = to_report(report);
      text += "pass: " + std::string(pass ? "true" : "false") + "\n";
    }
  } else if (c.test == "theorem1") {
    if (!c.seed) throw ParameterError("--seed is required");
    if (c.r == 0) throw ParameterError("--r is required");
    const KsBoundReport report =
        c.ensemble == "random"
            ? ks_bound_validation_random(c.order, c.count, c.r, *c.seed)
            : ks_bound_validation(make_ensemble_params(c.order, c.delta, primitive_override(c)), c.count, c.r, *c.seed);
    pass = !report.claim_applicable || report.fraction_within == 1.0;
    text = to_report(report);
  } else {
    throw ParameterError("unknown --test '" + c.test + "'");
  }

  OutputSink sink(c.output, out);
  sink.stream() << text;
  sink.finish();
  return pass ? kExitOk : kExitCheckFailed;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw Error("write failed for " + path.string());
}

std::string metadata_header(const Metadata& md) {
  std::string out;
  for (const auto& [k, v] : md) out += "# " + k + ": " + v + "\n";
  return out;
}

std::string index_name(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03zu", i);
  return buf;
}

int cmd_fig1(const Config& c, std::ostream& out) {
  if (c.count == 0) throw ParameterError("--count must be positive");
  if (c.bins == 0) throw ParameterError("--bins must be positive");
  const std::uint64_t seed = c.seed.value_or(1);
  const EnsembleParams params = make_ensemble_params(c.order, c.delta, primitive_override(c));
  const PseudoWignerEnsemble ensemble(params);

  Metadata md = base_metadata(c);
  append_ensemble_metadata(md, params);
  md.emplace_back("seed", std::to_string(seed));
  md.emplace_back("count", std::to_string(c.count));
  md.emplace_back("histogram", std::to_string(c.bins) + " uniform bins over [" + format_real(kHistogramLo) + ", " +
                                   format_real(kHistogramHi) + "]");
  const std::string header = metadata_header(md);

  const fs::path dir(c.output_dir);
  fs::create_directories(dir / "spectra");

  std::vector<Histogram> histograms;
  std::vector<double> pooled;
  std::vector<double> distances;
  std::string ks_csv = header + "index,message,ks_distance,argmax\n";
  for (std::size_t s = 0; s < c.count; ++s) {
    const BinaryPolynomial message = ensemble.random_message(seed, s);
    const Spectrum spectrum = eigenvalues_sym(ensemble.sample(message));
    const KsReport ks = kolmogorov_distance(spectrum);
    distances.push_back(ks.distance);
    ks_csv += std::to_string(s) + "," + message.to_hex() + "," + format_real(ks.distance) + "," + format_real(ks.argmax) + "\n";
    histograms.push_back(make_histogram(spectrum.eigenvalues, kHistogramLo, kHistogramHi, c.bins));
    pooled.insert(pooled.end(), spectrum.eigenvalues.begin(), spectrum.eigenvalues.end());

    Metadata smd = md;
    smd.emplace_back("index", std::to_string(s));
    smd.emplace_back("message", message.to_hex());
    std::ostringstream spec_text;
    write_spectrum(spec_text, spectrum, smd);
    write_text_file(dir / "spectra" / ("spectrum_" + index_name(s) + ".txt"), spec_text.str());
  }
  const KsReport pooled_ks = kolmogorov_distance(pooled);
  ks_csv += "average,," + format_real(pooled_ks.distance) + "," + format_real(pooled_ks.argmax) + "\n";

  const Histogram average = make_histogram(pooled, kHistogramLo, kHistogramHi, c.bins);
  std::string hist_csv = header + "bin_lo,bin_hi";
  for (std::size_t s = 0; s < c.count; ++s) hist_csv += ",matrix_" + index_name(s);
  hist_csv += "\n";
  std::string avg_csv = header + "bin_lo,bin_hi,density\n";
  const double width = average.bin_width();
  for (std::size_t b = 0; b < c.bins; ++b) {
    const std::string edges = format_real(kHistogramLo + width * b) + "," + format_real(kHistogramLo + width * (b + 1));
    hist_csv += edges;
    for (const Histogram& h : histograms) hist_csv += "," + format_real(h.density[b]);
    hist_csv += "\n";
    avg_csv += edges + "," + format_real(average.density[b]) + "\n";
  }

  std::string curve_csv = header + "x,density,cdf\n";
  for (std::size_t i = 0; i < kCurvePoints; ++i) {
    const double x = kHistogramLo + (kHistogramHi - kHistogramLo) * static_cast<double>(i) / (kCurvePoints - 1);
    curve_csv += format_real(x) + "," + format_real(semicircle_pdf(x)) + "," + format_real(semicircle_cdf(x)) + "\n";
  }

  write_text_file(dir / "ks_summary.csv", ks_csv);
  write_text_file(dir / "histograms.csv", hist_csv);
  write_text_file(dir / "average_histogram.csv", avg_csv);
  write_text_file(dir / "semicircle.csv", curve_csv);

  ReportWriter summary("fig1");
  summary.add("order", std::uint64_t{c.order})
      .add("count", std::uint64_t{c.count})
      .add("max_ks_distance", *std::max_element(distances.begin(), distances.end()))
      .add("average_ks_distance", pooled_ks.distance)
      .add("average_histogram_mass", average.mass())
      .add("eigenvalues_outside_range", std::uint64_t{average.outside});
  out << summary.str();
  return kExitOk;
}

std::string join_args(const std::vector<std::string>& args) {
  std::string out = "pwig";
  for (const auto& a : args) out += " " + a;
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  c.command_line = join_args(args);

  CLI::App app{"Pseudo-Wigner matrices from dual BCH codes", "pwig"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a matrix");
  gen->add_option("--order", c.order, "Matrix order N")->required();
  gen->add_option("--delta", c.delta, "Designed distance of the BCH code");
  gen->add_option("--primitive", c.primitive_hex, "Primitive polynomial as little-endian hex");
  gen->add_option("--message", c.message_hex, "Message polynomial v as little-endian hex");
  gen->add_option("--seed", c.seed, "Seed for the message (or the random ensemble)");
  gen->add_option("--index", c.index, "Draw index under --seed");
  gen->add_option("--ensemble", c.ensemble, "pseudo or random")->check(CLI::IsMember({"pseudo", "random"}));
  gen->add_option("--format", c.format, "mm, csv or bits")->check(CLI::IsMember({"mm", "csv", "bits"}));
  gen->add_option("--output", c.output, "Output path, - for stdout");

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of a Matrix Market file");
  spectrum->add_option("--input", c.input, "Matrix Market file")->required();
  spectrum->add_option("--output", c.output, "Output path, - for stdout");

  auto* ks = app.add_subcommand("ks", "Kolmogorov distance to the semicircle law");
  ks->add_option("--input", c.input, "Matrix Market or spectrum file")->required();
  ks->add_option("--r", c.r, "Report pass/fail against the threshold 1/r");
  ks->add_option("--output", c.output, "Output path, - for stdout");

  auto* verify = app.add_subcommand("verify", "Run a verification check");
  verify->add_option("--test", c.test, "independence, moments, quasirandom, variance or theorem1")
      ->required()
      ->check(CLI::IsMember({"independence", "moments", "quasirandom", "variance", "theorem1"}));
  verify->add_option("--m", c.m, "Field degree (independence)");
  verify->add_option("--delta", c.delta, "Designed distance");
  verify->add_option("--r", c.r, "Independence order or KS parameter r");
  verify->add_option("--primitive", c.primitive_hex, "Primitive polynomial as little-endian hex");
  verify->add_option("--mode", c.mode, "exhaustive or sampled (independence)");
  verify->add_option("--tuples", c.tuples, "Sampled position tuples (independence)");
  verify->add_option("--order", c.order, "Matrix order N");
  verify->add_option("--count", c.count, "Number of matrices");
  verify->add_option("--seed", c.seed, "Sampling seed");
  verify->add_option("--ensemble", c.ensemble, "pseudo or random")->check(CLI::IsMember({"pseudo", "random"}));
  verify->add_option("--lmax", c.l_max, "Highest moment order (moments)");
  verify->add_flag("--random-reference", c.random_reference, "Also sample truly random matrices (moments)");
  verify->add_flag("--exhaustive", c.exhaustive, "Enumerate all sign matrices (variance)");
  verify->add_option("--vector", c.vector, "uniform or e1 (variance)");
  verify->add_option("--input", c.input, "Matrix Market file (quasirandom)");
  verify->add_option("--output", c.output, "Output path, - for stdout");

  auto* fig1 = app.add_subcommand("fig1", "Spectral histograms of a batch of pseudo-Wigner matrices");
  c.order = 0;
  fig1->add_option("--order", c.order, "Matrix order N (default 700)");
  fig1->add_option("--count", c.count, "Number of matrices (default 25)");
  fig1->add_option("--delta", c.delta, "Designed distance");
  fig1->add_option("--seed", c.seed, "Sampling seed (default 1)");
  fig1->add_option("--primitive", c.primitive_hex, "Primitive polynomial as little-endian hex");
  fig1->add_option("--bins", c.bins, "Histogram bins over [-1.1, 1.1]");
  fig1->add_option("--output-dir", c.output_dir, "Directory for the CSV files");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "pwig: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(c, out);
    if (*spectrum) return cmd_spectrum(c, out);
    if (*ks) return cmd_ks(c, out);
    if (*verify) return cmd_verify(c, out);
    if (*fig1) {
      if (fig1->count("--order") == 0) c.order = 700;
      if (fig1->count("--count") == 0) c.count = 25;
      return cmd_fig1(c, out);
    }
  } catch (const ParameterError& e) {
    err << "pwig: " << e.what() << "\n";
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "pwig: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "pwig: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}

}  // namespace pwig
