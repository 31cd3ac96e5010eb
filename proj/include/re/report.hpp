#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace re {

enum class ReportFormat { kJsonLines, kCsv };

/// One benchmark run of one arm.
struct TrialReport {
  std::string problem;
  std::string arm;
  std::uint64_t seed = 0;
  double mu0 = 1.0;
  int ramp_length = 0;
  double final_objective = 0.0;
  std::optional<double> relative_error;
  std::optional<bool> success;
  int iterations = 0;
  double wall_ms = 0.0;
};

std::string to_json_lines(const std::vector<TrialReport>& reports);
std::string to_csv(const std::vector<TrialReport>& reports);

std::vector<TrialReport> parse_json_lines(const std::string& text);
std::vector<TrialReport> parse_csv(const std::string& text);

/// Writes `reports` in the requested format. Throws on empty input or an
/// unwritable path.
void emit_results(const std::vector<TrialReport>& reports,
                  ReportFormat format, const std::string& path);

}  // namespace re
