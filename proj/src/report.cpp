#include "re/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace re {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ordered_json to_json(const TrialReport& r) {
  ordered_json j;
  j["problem"] = r.problem;
  j["arm"] = r.arm;
  j["seed"] = r.seed;
  j["mu0"] = r.mu0;
  j["T"] = r.ramp_length;
  j["final_objective"] = r.final_objective;
  j["relative_error"] =
      r.relative_error ? ordered_json(*r.relative_error) : ordered_json();
  j["success"] = r.success ? ordered_json(*r.success) : ordered_json();
  j["iterations"] = r.iterations;
  j["wall_ms"] = r.wall_ms;
  return j;
}

TrialReport from_json(const ordered_json& j) {
  TrialReport r;
  r.problem = j.at("problem").get<std::string>();
  r.arm = j.at("arm").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mu0 = j.at("mu0").get<double>();
  r.ramp_length = j.at("T").get<int>();
  r.final_objective = j.at("final_objective").get<double>();
  if (!j.at("relative_error").is_null()) {
    r.relative_error = j.at("relative_error").get<double>();
  }
  if (!j.at("success").is_null()) {
    r.success = j.at("success").get<bool>();
  }
  r.iterations = j.at("iterations").get<int>();
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

}  // namespace

std::string to_json_lines(const std::vector<TrialReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    out << to_json(r).dump() << '\n';
  }
  return out.str();
}

std::vector<TrialReport> parse_json_lines(const std::string& text) {
  std::vector<TrialReport> reports;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    reports.push_back(from_json(ordered_json::parse(line)));
  }
  return reports;
}

std::string to_csv(const std::vector<TrialReport>& reports) {
  std::ostringstream out;
  out << "problem,arm,seed,mu0,T,final_objective,relative_error,success,"
         "iterations,wall_ms\n";
  for (const auto& r : reports) {
    out << r.problem << ',' << r.arm << ',' << r.seed << ',' << fmt17(r.mu0)
        << ',' << r.ramp_length << ',' << fmt17(r.final_objective) << ',';
    if (r.relative_error) out << fmt17(*r.relative_error);
    out << ',';
    if (r.success) out << (*r.success ? 1 : 0);
    out << ',' << r.iterations << ',' << fmt17(r.wall_ms) << '\n';
  }
  return out.str();
}

std::vector<TrialReport> parse_csv(const std::string& text) {
  std::vector<TrialReport> reports;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    while (cells.size() < 10) cells.emplace_back();
    TrialReport r;
    r.problem = cells[0];
    r.arm = cells[1];
    r.seed = std::stoull(cells[2]);
    r.mu0 = std::stod(cells[3]);
    r.ramp_length = std::stoi(cells[4]);
    r.final_objective = std::stod(cells[5]);
    if (!cells[6].empty()) r.relative_error = std::stod(cells[6]);
    if (!cells[7].empty()) r.success = cells[7] == "1";
    r.iterations = std::stoi(cells[8]);
    r.wall_ms = std::stod(cells[9]);
    reports.push_back(std::move(r));
  }
  return reports;
}

void emit_results(const std::vector<TrialReport>& reports, ReportFormat format,
                  const std::string& path) {
  if (reports.empty()) {
    throw std::invalid_argument("emit_results: no reports");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("emit_results: cannot write " + path);
  }
  out << (format == ReportFormat::kJsonLines ? to_json_lines(reports)
                                             : to_csv(reports));
}

}  // namespace re
