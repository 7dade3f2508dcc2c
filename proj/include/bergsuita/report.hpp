#pragma once

// Experiment reports (JSON) and figure tables (CSV).

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace bergsuita {

struct Sample {
  double parameter = 0.0;
  double value = 0.0;
  double error = 0.0;
};

struct Verdict {
  std::string name;
  bool passed = false;
  /// Evidence-only verdicts are reported but never gate a run.
  bool asserted = true;
  std::string detail;
};

struct ExperimentReport {
  std::string kind;  // monotonicity, convexity, limit, lower-bound, figure-scan
  std::vector<double> grid;
  std::vector<Sample> samples;
  std::vector<Verdict> verdicts;
  std::uint64_t seed = 0;
  std::size_t sample_count = 0;
  nlohmann::json tolerances = nlohmann::json::object();

  /// True when every asserted verdict passed.
  bool passed() const;
};

void to_json(nlohmann::json& j, const Sample& s);
void to_json(nlohmann::json& j, const Verdict& v);
void to_json(nlohmann::json& j, const ExperimentReport& r);
void from_json(const nlohmann::json& j, Sample& s);
void from_json(const nlohmann::json& j, Verdict& v);
void from_json(const nlohmann::json& j, ExperimentReport& r);

struct FigureRow {
  std::string curve;
  double b = 0.0;
  double F = 0.0;
};

/// Rows of (curve, b, F) with CSV header `curve,b,F`.
struct FigureTable {
  std::vector<FigureRow> rows;

  void write_csv(std::ostream& out) const;
  /// Throws ValidationError on a malformed header or row.
  static FigureTable read_csv(std::istream& in);
};

/// Formats a double so that it parses back to the same value.
std::string format_double(double x);

}  // namespace bergsuita
