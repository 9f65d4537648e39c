#pragma once

// Structured-text reports: a "# pwig report" line, then one "key: value" pair
// per line in a fixed order. Reals use 17 significant digits, booleans are
// "true"/"false", lists are comma separated.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pwig/spectral.hpp"
#include "pwig/stats.hpp"

namespace pwig {

std::string format_real(double value);

class ReportWriter {
 public:
  explicit ReportWriter(std::string kind);

  ReportWriter& add(std::string_view key, std::string_view value);
  ReportWriter& add(std::string_view key, const char* value) { return add(key, std::string_view(value)); }
  ReportWriter& add(std::string_view key, double value);
  ReportWriter& add(std::string_view key, bool value);
  ReportWriter& add(std::string_view key, std::uint64_t value);
  ReportWriter& add(std::string_view key, std::int64_t value);
  ReportWriter& add(std::string_view key, unsigned value) { return add(key, std::uint64_t{value}); }
  ReportWriter& add(std::string_view key, int value) { return add(key, std::int64_t{value}); }
  ReportWriter& add_list(std::string_view key, const std::vector<double>& values);

  std::string str() const;

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

// Parses a report back into its ordered key/value pairs.
std::vector<std::pair<std::string, std::string>> parse_report(std::string_view text);

std::string to_report(const KsReport& report);
std::string to_report(const IndependenceReport& report);
std::string to_report(const MomentReport& report);
std::string to_report(const QuasiRandomReport& report);
std::string to_report(const VarianceReport& report);
std::string to_report(const KsBoundReport& report);

}  // namespace pwig
