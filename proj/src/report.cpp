#include "bergsuita/report.hpp"

#include <algorithm>
#include <sstream>

#include <fmt/core.h>

#include "bergsuita/numerics.hpp"

namespace bergsuita {

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const Verdict& v) { return v.passed || !v.asserted; });
}

void to_json(nlohmann::json& j, const Sample& s) {
  j = {{"parameter", s.parameter}, {"value", s.value}, {"error", s.error}};
}

void to_json(nlohmann::json& j, const Verdict& v) {
  j = {{"name", v.name}, {"passed", v.passed}, {"asserted", v.asserted}, {"detail", v.detail}};
}

void to_json(nlohmann::json& j, const ExperimentReport& r) {
  j = {{"kind", r.kind},
       {"grid", r.grid},
       {"samples", r.samples},
       {"verdicts", r.verdicts},
       {"passed", r.passed()},
       {"metadata",
        {{"seed", r.seed}, {"sample_count", r.sample_count}, {"tolerances", r.tolerances}}}};
}

void from_json(const nlohmann::json& j, Sample& s) {
  s.parameter = j.at("parameter").get<double>();
  s.value = j.at("value").get<double>();
  s.error = j.at("error").get<double>();
}

void from_json(const nlohmann::json& j, Verdict& v) {
  v.name = j.at("name").get<std::string>();
  v.passed = j.at("passed").get<bool>();
  v.asserted = j.at("asserted").get<bool>();
  v.detail = j.at("detail").get<std::string>();
}

void from_json(const nlohmann::json& j, ExperimentReport& r) {
  r.kind = j.at("kind").get<std::string>();
  r.grid = j.at("grid").get<std::vector<double>>();
  r.samples = j.at("samples").get<std::vector<Sample>>();
  r.verdicts = j.at("verdicts").get<std::vector<Verdict>>();
  const auto& meta = j.at("metadata");
  r.seed = meta.at("seed").get<std::uint64_t>();
  r.sample_count = meta.at("sample_count").get<std::size_t>();
  r.tolerances = meta.at("tolerances");
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

void FigureTable::write_csv(std::ostream& out) const {
  out << "curve,b,F\n";
  for (const auto& row : rows)
    out << row.curve << ',' << format_double(row.b) << ',' << format_double(row.F) << '\n';
}

FigureTable FigureTable::read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "curve,b,F")
    throw ValidationError("figure table: expected header 'curve,b,F'");
  FigureTable table;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw ValidationError(fmt::format("figure table: malformed line {}", line_no));
    FigureRow row;
    row.curve = line.substr(0, c1);
    try {
      row.b = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
      row.F = std::stod(line.substr(c2 + 1));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("figure table: bad number on line {}", line_no));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace bergsuita
