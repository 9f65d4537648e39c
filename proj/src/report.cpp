#include "pwig/report.hpp"

#include <cstdio>
#include <sstream>

#include "pwig/error.hpp"

namespace pwig {

std::string format_real(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

ReportWriter::ReportWriter(std::string kind) { fields_.emplace_back("kind", std::move(kind)); }

ReportWriter& ReportWriter::add(std::string_view key, std::string_view value) {
  fields_.emplace_back(std::string(key), std::string(value));
  return *this;
}

ReportWriter& ReportWriter::add(std::string_view key, double value) { return add(key, std::string_view(format_real(value))); }

ReportWriter& ReportWriter::add(std::string_view key, bool value) { return add(key, value ? "true" : "false"); }

ReportWriter& ReportWriter::add(std::string_view key, std::uint64_t value) {
  return add(key, std::string_view(std::to_string(value)));
}

ReportWriter& ReportWriter::add(std::string_view key, std::int64_t value) {
  return add(key, std::string_view(std::to_string(value)));
}

ReportWriter& ReportWriter::add_list(std::string_view key, const std::vector<double>& values) {
  std::string joined;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) joined += ",";
    joined += format_real(values[i]);
  }
  return add(key, std::string_view(joined));
}

std::string ReportWriter::str() const {
  std::string out = "# pwig report\n";
  for (const auto& [k, v] : fields_) out += k + ": " + v + "\n";
  return out;
}

std::vector<std::pair<std::string, std::string>> parse_report(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw FormatError("report line without 'key: value': " + line);
    out.emplace_back(line.substr(0, colon), line.substr(colon + 2));
  }
  return out;
}

std::string to_report(const KsReport& r) {
  ReportWriter w("ks");
  w.add("distance", r.distance).add("argmax", r.argmax);
  if (r.threshold) w.add("threshold", *r.threshold);
  if (r.pass) w.add("pass", *r.pass);
  return w.str();
}

std::string to_report(const IndependenceReport& r) {
  ReportWriter w("independence");
  std::string tuple;
  for (std::size_t i = 0; i < r.worst_tuple.size(); ++i) tuple += (i ? "," : "") + std::to_string(r.worst_tuple[i]);
  w.add("mode", r.mode == IndependenceMode::exhaustive ? "exhaustive" : "sampled")
      .add("r", r.r)
      .add("length", std::uint64_t{r.length})
      .add("codewords", r.codewords)
      .add("tuples_checked", r.tuples_checked)
      .add("worst_deviation", r.worst_deviation)
      .add("worst_tuple", std::string_view(tuple))
      .add("tolerance", r.tolerance)
      .add("pass", r.pass);
  return w.str();
}

std::string to_report(const MomentReport& r) {
  ReportWriter w("moments");
  w.add("order", std::uint64_t{r.order}).add("samples", std::uint64_t{r.samples}).add("beta2_identity", r.beta2_identity);
  for (const MomentRow& row : r.rows) {
    const std::string p = "l" + std::to_string(row.l) + ".";
    w.add(p + "mean", row.mean)
        .add(p + "min", row.min)
        .add(p + "max", row.max)
        .add(p + "sample_std_error", row.sample_std_error)
        .add(p + "scaled_variance", row.scaled_variance)
        .add(p + "reference", row.reference);
    if (row.random_mean) w.add(p + "random_mean", *row.random_mean);
    w.add(p + "tolerance", row.tolerance).add(p + "pass", row.pass);
  }
  w.add("pass", r.pass);
  return w.str();
}

std::string to_report(const QuasiRandomReport& r) {
  ReportWriter w("quasirandom");
  w.add("order", std::uint64_t{r.order})
      .add("lambda1", r.lambda1)
      .add("lambda2", r.lambda2)
      .add("lambda2_magnitude", r.lambda2_magnitude)
      .add("edge_sum", r.edge_sum)
      .add("sign_sum", r.sign_sum)
      .add("q_norm", r.q_norm)
      .add("lambda1_ok", r.lambda1_ok)
      .add("lambda2_ok", r.lambda2_ok)
      .add("sign_sum_ok", r.sign_sum_ok)
      .add("spectral_norm_ok", r.spectral_norm_ok)
      .add("identity_ok", r.identity_ok)
      .add("pass", r.pass);
  return w.str();
}

std::string to_report(const VarianceReport& r) {
  ReportWriter w("variance");
  w.add("order", std::uint64_t{r.order})
      .add("samples", std::uint64_t{r.samples})
      .add("exhaustive", r.exhaustive)
      .add("estimate", r.estimate)
      .add("std_error", r.std_error)
      .add("fourth_power_sum", r.fourth_power_sum)
      .add("exact_reference", r.exact_reference)
      .add("asymptotic_reference", r.asymptotic_reference)
      .add("correction", r.correction)
      .add("correction_flagged", r.correction_flagged);
  return w.str();
}

std::string to_report(const KsBoundReport& r) {
  ReportWriter w("ks_bound");
  w.add("order", std::uint64_t{r.order})
      .add("r", r.r)
      .add("threshold", r.threshold)
      .add("samples", std::uint64_t{r.distances.size()})
      .add("fraction_within", r.fraction_within)
      .add("min_distance", r.min_distance)
      .add("mean_distance", r.mean_distance)
      .add("max_distance", r.max_distance)
      .add("claim_applicable", r.claim_applicable)
      .add_list("distances", r.distances);
  return w.str();
}

}  // namespace pwig
