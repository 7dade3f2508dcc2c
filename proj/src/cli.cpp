#include "bergsuita/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <json.hpp>

#include "bergsuita/acceptance.hpp"
#include "bergsuita/bergman.hpp"
#include "bergsuita/domains.hpp"
#include "bergsuita/green1d.hpp"
#include "bergsuita/indicatrix.hpp"
#include "bergsuita/report.hpp"
#include "bergsuita/suita.hpp"

namespace bergsuita::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormats = R"(File formats:
  domain spec (--domain): inline JSON or a path to a JSON file, one of
    {"variant":"ellipsoid","p":[p1,...],"radii":[R1,...]}   radii optional
    {"variant":"annulus","r":r}   {"variant":"ball","n":n}
    {"variant":"polydisk","n":n}  {"variant":"symmetrized_bidisk"}
  points (--w): comma-separated complex literals such as 0.3, 0.2-0.1i,
    (0.3,0.2); "sqrt" means sqrt(r) on an annulus.
  lists: --n 2..6 or --n 2,3,4; --m 0.5,2,8; negative levels as --t=-6,-5.
  scan CSV: header curve,b,F; one row per (curve, b); curves are named
    "ell1 m=<m> n=<n>" or "p m=<m>". A JSON report with the verdicts is
    written next to the CSV (same stem, .json).
  sublevel CSV (green --sublevel): header t,lambda,stderr,normalized.
  profile CSV (indicatrix): header r,gamma; arcs CSV: branch,u,rho,S.
  experiment JSON: {kind, grid, samples[{parameter,value,error}],
    verdicts[{name,passed,asserted,detail}], passed, metadata{seed,
    sample_count, tolerances}}.
  scalar results: text "key = value" lines, --format csv gives key,value
    rows, --format json an object.
Environment: BERGSUITA_THREADS sets the worker count for scans.
Exit codes: 0 success, 1 validation error, 2 numerical failure or a failed
  acceptance criterion.)";

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(trim(cur));
  return parts;
}

}  // namespace

std::complex<double> parse_complex(const std::string& raw, double inner_radius) {
  std::string text = trim(raw);
  if (text.empty()) throw ValidationError("empty complex literal");
  if (text == "sqrt") {
    if (!(inner_radius > 0.0)) throw ValidationError("'sqrt' needs an annulus radius");
    return std::sqrt(inner_radius);
  }
  if (text.front() == '(' && text.back() == ')') {
    const auto parts = split(text.substr(1, text.size() - 2), ',');
    if (parts.size() != 2) throw ValidationError("expected (re,im): '" + raw + "'");
    return {parse_real(parts[0]), parse_real(parts[1])};
  }
  if (text.back() != 'i') return parse_real(text);
  text.pop_back();
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  const auto imag_of = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s);
  };
  if (cut == std::string::npos) return {0.0, imag_of(text)};
  return {parse_real(text.substr(0, cut)), imag_of(text.substr(cut))};
}

std::vector<std::complex<double>> parse_point(const std::string& text, double inner_radius) {
  std::vector<std::complex<double>> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_complex(part, inner_radius));
  return out;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  const auto dots = text.find("..");
  const auto as_int = [](const std::string& s) {
    const double v = parse_real(trim(s));
    if (v != std::floor(v)) throw ValidationError("not an integer: '" + s + "'");
    return static_cast<int>(v);
  };
  if (dots != std::string::npos) {
    const int lo = as_int(text.substr(0, dots)), hi = as_int(text.substr(dots + 2));
    if (hi < lo) throw ValidationError("empty range '" + text + "'");
    for (int k = lo; k <= hi; ++k) out.push_back(k);
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(as_int(part));
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_real(part));
  return out;
}

namespace {

struct Common {
  double tol = 1e-14;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  int grid = 0;
  std::string out;
  std::string format;
};

struct DomainFlags {
  std::string domain_json;
  std::optional<double> annulus;
  bool disk = false;
  std::optional<int> ball;
  std::optional<int> polydisk;
  std::string ellipsoid;
  std::string radii;
  bool g2 = false;
  std::string w;
};

struct FamilyFlags {
  std::string family;
  std::string m;
  std::string n;
  std::optional<double> b;
};

void add_common(CLI::App* app, Common& c, bool samples, bool grid) {
  app->add_option("--tol", c.tol, "relative tolerance for series and quadrature")
      ->check(CLI::PositiveNumber);
  if (samples) app->add_option("--samples", c.samples, "sample count for sublevel volumes");
  app->add_option("--seed", c.seed, "seed for sampled quantities (default 0)");
  if (grid) app->add_option("--grid", c.grid, "number of grid points");
  app->add_option("--out", c.out, "write the result to this path instead of stdout");
  app->add_option("--format", c.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_domain(CLI::App* app, DomainFlags& d) {
  app->add_option("--domain", d.domain_json, "domain spec: inline JSON or a JSON file");
  app->add_option("--annulus", d.annulus, "annulus {r < |z| < 1}");
  app->add_flag("--disk", d.disk, "unit disk");
  app->add_option("--ball", d.ball, "unit ball in C^n");
  app->add_option("--polydisk", d.polydisk, "unit polydisk in C^n");
  app->add_option("--ellipsoid", d.ellipsoid, "exponents p_1,...,p_n");
  app->add_option("--radii", d.radii, "ellipsoid radii R_1,...,R_n");
  app->add_flag("--g2", d.g2, "symmetrized bidisk");
  app->add_option("--w", d.w, "base point or pole");
}

void add_family(CLI::App* app, FamilyFlags& f, bool n_list) {
  app->add_option("--family", f.family, "ell1: E(1/2, m, ..., m); p: E(m, 1)")
      ->check(CLI::IsMember({"ell1", "p"}));
  app->add_option("--m", f.m, "exponent m (a list for scans)");
  app->add_option("--n", f.n, n_list ? "dimensions, e.g. 2..6" : "dimension n");
  app->add_option("--b", f.b, "axis point (b, 0, ..., 0)");
}

DomainSpec make_domain(const DomainFlags& d) {
  int chosen = !d.domain_json.empty() + d.annulus.has_value() + d.disk + d.ball.has_value() +
               d.polydisk.has_value() + !d.ellipsoid.empty() + d.g2;
  if (chosen != 1) throw ValidationError("choose exactly one domain flag");
  if (!d.domain_json.empty()) {
    std::string text = trim(d.domain_json);
    if (text.empty() || text.front() != '{') {
      std::ifstream in(text);
      if (!in) throw ValidationError("cannot read domain spec file '" + text + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(std::string("domain spec: ") + e.what());
    }
    return j.get<DomainSpec>();
  }
  if (d.annulus) return DomainSpec::annulus(*d.annulus);
  if (d.disk) return DomainSpec::ball(1);
  if (d.ball) return DomainSpec::ball(*d.ball);
  if (d.polydisk) return DomainSpec::polydisk(*d.polydisk);
  if (d.g2) return DomainSpec::symmetrized_bidisk();
  return DomainSpec::ellipsoid(parse_double_list(d.ellipsoid),
                               d.radii.empty() ? std::vector<double>{}
                                               : parse_double_list(d.radii));
}

double inner_radius(const DomainSpec& domain) {
  if (const auto* a = std::get_if<Annulus>(&domain.variant())) return a->r;
  return 0.0;
}

Point make_point(const DomainFlags& d, const DomainSpec& domain) {
  if (d.w.empty()) {
    if (std::holds_alternative<Annulus>(domain.variant()))
      throw ValidationError("--w is required on an annulus");
    return Point(domain.dimension(), 0.0);
  }
  Point w = parse_point(d.w, inner_radius(domain));
  if (static_cast<int>(w.size()) != domain.dimension())
    throw ValidationError(fmt::format("--w has {} coordinates, the domain has dimension {}",
                                      w.size(), domain.dimension()));
  return w;
}

ordered_json point_json(std::span<const Complex> w) {
  ordered_json j = ordered_json::array();
  for (Complex c : w) j.push_back({c.real(), c.imag()});
  return j;
}

ordered_json domain_json(const DomainSpec& d) {
  nlohmann::json j = d;
  return ordered_json::parse(j.dump());
}

std::string render_scalar(const ordered_json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::string text;
  if (format == "csv") text = "key,value\n";
  for (const auto& [key, value] : j.items()) {
    const std::string v = value.is_number_float() ? format_double(value.get<double>())
                          : value.is_string()     ? value.get<std::string>()
                                                  : value.dump();
    text += format == "csv" ? key + "," + (v.find(',') != std::string::npos ? "\"" + v + "\"" : v)
                            : key + " = " + v;
    text += "\n";
  }
  return text;
}

void write_text(const Common& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file '" + c.out + "'");
  file << text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ValidationError("cannot open output file '" + path + "'");
  file << text;
}

EllipsoidFamilyParams family_params(const FamilyFlags& f) {
  if (f.m.empty() || f.n.empty() || !f.b) throw ValidationError("family needs --m, --n and --b");
  return {parse_real(f.m), parse_int_list(f.n).at(0), *f.b};
}

Tolerance series_tol(const Common& c) { return {0.0, c.tol, 200}; }

// ---- subcommands ----------------------------------------------------------

int cmd_kernel(const Common& c, const DomainFlags& d, const FamilyFlags& f, std::ostream& out) {
  ordered_json j;
  if (!f.family.empty()) {
    if (f.family != "ell1") throw ValidationError("kernel: only the ell1 family has a closed form");
    const auto params = family_params(f);
    const KernelValue k = kernel_deflated(params);
    j = {{"domain", domain_json(params.domain())},
         {"w", point_json(params.base_point())},
         {"K", k.value},
         {"method", to_string(k.method)},
         {"error_bound", k.error_bound}};
  } else {
    const DomainSpec domain = make_domain(d);
    const Point w = make_point(d, domain);
    if (!contains(domain, w)) throw ValidationError("kernel: --w is not inside the domain");
    KernelValue k;
    if (const auto* a = std::get_if<Annulus>(&domain.variant())) {
      k = kernel_annulus(a->r, w[0], series_tol(c));
    } else if (std::holds_alternative<SymmetrizedBidisk>(domain.variant())) {
      if (w[0] != 0.0 || w[1] != 0.0)
        throw ValidationError("kernel: the symmetrized bidisk is supported at the origin only");
      k = kernel_g2_center();
    } else if (domain.dimension() == 1 && std::holds_alternative<Ball>(domain.variant())) {
      k = kernel_disk(w[0]);
    } else {
      k = kernel_reinhardt(domain, w, series_tol(c));
    }
    j = {{"domain", domain_json(domain)},
         {"w", point_json(w)},
         {"K", k.value},
         {"method", to_string(k.method)},
         {"error_bound", k.error_bound}};
  }
  write_text(c, render_scalar(j, c.format), out);
  return 0;
}

GreenSeries1D make_green(const DomainSpec& domain, Complex w, const Common& c) {
  if (const auto* a = std::get_if<Annulus>(&domain.variant()))
    return solve_green_annulus(a->r, w, {0.0, c.tol, 200});
  if (std::holds_alternative<Ball>(domain.variant()) && domain.dimension() == 1)
    return GreenSeries1D::disk(w);
  throw ValidationError("green: needs the disk or an annulus, got " + domain.name());
}

int cmd_green(const Common& c, const DomainFlags& d, const std::string& t_list, bool sublevel,
              std::ostream& out) {
  const DomainSpec domain = make_domain(d);
  const Point w = make_point(d, domain);
  const GreenSeries1D g = make_green(domain, w[0], c);
  const std::vector<double> levels = t_list.empty() ? std::vector<double>{}
                                                    : parse_double_list(t_list);
  if (sublevel) {
    if (levels.empty()) throw ValidationError("green --sublevel needs --t");
    const SampleStream stream{2, c.seed, SampleKind::low_discrepancy};
    const SublevelCurve curve =
        sublevel_curve(g, levels, stream, c.samples ? c.samples : 200'000);
    if (c.format == "json") {
      ordered_json j = {{"t", curve.t},
                        {"lambda", curve.lambda},
                        {"stderr", curve.std_error},
                        {"normalized", curve.normalized},
                        {"normalized_error", curve.normalized_error}};
      write_text(c, j.dump(2) + "\n", out);
    } else {
      std::ostringstream ss;
      curve.write_csv(ss);
      write_text(c, ss.str(), out);
    }
    return 0;
  }

  ordered_json j = {{"domain", domain_json(domain)},
                    {"w", point_json(w)},
                    {"robin", g.robin()},
                    {"capacity", robin_capacity(g)},
                    {"truncation", g.truncation()},
                    {"residual_bound", g.residual_bound()}};
  if (!g.is_disk()) j["covering_capacity_bound"] = covering_capacity_bound(g.inner_radius());
  if (auto zc = critical_point(g)) {
    j["critical_point"] = point_json(std::vector<Complex>{*zc})[0];
    j["critical_level"] = g(*zc);
  }
  if (!levels.empty()) {
    if (c.format != "json") throw ValidationError("green --t reports need --format json");
    ordered_json arr = ordered_json::array();
    for (double t : levels) {
      const LevelReport rep = level_flux_and_isoperimetric(g, t, c.grid ? c.grid : 4096);
      arr.push_back({{"t", rep.t},
                     {"flux", rep.flux},
                     {"density", rep.density},
                     {"iso_ratio", rep.iso_ratio},
                     {"length", rep.length},
                     {"area", rep.area},
                     {"min_gradient", rep.min_gradient},
                     {"components", rep.components}});
    }
    j["levels"] = arr;
  }
  write_text(c, render_scalar(j, c.format), out);
  return 0;
}

int cmd_indicatrix(const Common& c, const DomainFlags& d, const FamilyFlags& f,
                   const std::optional<double>& p1, const std::optional<double>& p2,
                   std::ostream& out) {
  if (p1 || p2) {
    if (!p1 || !p2 || !f.b) throw ValidationError("indicatrix: --p1, --p2 and --b go together");
    const auto prof = kobayashi_profile_arcs(*p1, *p2, *f.b);
    if (c.format == "csv") {
      std::string text = "branch,u,rho,S\n";
      for (const auto& arc : prof.arcs)
        for (const auto& pt : arc.points)
          text += fmt::format("{},{},{},{}\n",
                              arc.branch == Branch::one_in_A ? "in_A" : "not_in_A",
                              format_double(pt.u), format_double(pt.rho), format_double(pt.S));
      write_text(c, text, out);
      return 0;
    }
    const auto env = indicatrix_envelope_volume(*p1, *p2, *f.b);
    ordered_json j = {{"p1", *p1}, {"p2", *p2}, {"b", *f.b}, {"volume", env.volume},
                      {"grid", env.grid}, {"rho_max", env.rho_max}};
    write_text(c, render_scalar(j, c.format), out);
    return 0;
  }

  IndicatrixProfile prof;
  ordered_json j;
  if (!f.family.empty()) {
    if (f.family != "ell1") throw ValidationError("indicatrix: use --p1/--p2 for general E(p1,p2)");
    const auto params = family_params(f);
    prof = kobayashi_profile_p1half(params.m, params.n, params.b);
    j = {{"volume", prof.volume()}, {"volume_closed", indicatrix_volume_closed(params)}};
  } else {
    const DomainSpec domain = make_domain(d);
    if (!d.w.empty() && !std::all_of(make_point(d, domain).begin(), make_point(d, domain).end(),
                                      [](Complex z) { return z == 0.0; }))
      throw ValidationError("indicatrix: only the origin is supported for this domain");
    prof = std::holds_alternative<SymmetrizedBidisk>(domain.variant()) ? azukawa_g2_center()
                                                                       : azukawa_balanced(domain);
    j = {{"volume", prof.volume()}};
  }
  if (c.format == "csv") {
    std::ostringstream ss;
    prof.write_csv(ss, c.grid ? c.grid : 201);
    write_text(c, ss.str(), out);
  } else {
    j["r_max"] = prof.r_max;
    j["knots"] = prof.knots;
    write_text(c, render_scalar(j, c.format), out);
  }
  return 0;
}

ordered_json ratio_json(const SuitaRatio& s) {
  return {{"F", s.F},
          {"K", s.kernel.value},
          {"kernel_method", to_string(s.kernel.method)},
          {"indicatrix_volume", s.indicatrix_volume},
          {"n", s.n},
          {"class", to_string(s.classification)},
          {"bound", s.bound()}};
}

int cmd_suita(const Common& c, const DomainFlags& d, const FamilyFlags& f,
              const std::string& method, bool maximize, std::ostream& out) {
  ordered_json j;
  if (maximize) {
    if (f.family.empty() || f.m.empty()) throw ValidationError("--maximize needs --family and --m");
    const double m = parse_real(f.m);
    MaximizeResult res;
    if (f.family == "ell1") {
      if (f.n.empty()) throw ValidationError("--maximize --family ell1 needs --n");
      res = maximize_F_family(m, parse_int_list(f.n).at(0));
    } else {
      res = maximize_F_pfamily(m);
    }
    j = {{"b_star", res.argmax}, {"F_star", res.value}, {"bracket", {res.lo, res.hi}},
         {"flat", res.flat}};
  } else if (!f.family.empty()) {
    if (f.family == "ell1") {
      j = ratio_json(suita_F_family(family_params(f)));
    } else {
      if (f.m.empty() || !f.b) throw ValidationError("--family p needs --m and --b");
      j = ratio_json(suita_F_pfamily(parse_real(f.m), *f.b));
    }
  } else if (d.g2 && d.w.empty()) {
    j = ratio_json(suita_F_g2());
  } else {
    const DomainSpec domain = make_domain(d);
    const Point w = make_point(d, domain);
    SuitaMethod sm = SuitaMethod::automatic;
    if (method == "closed") sm = SuitaMethod::closed_form;
    if (method == "numeric") sm = SuitaMethod::numeric;
    j = ratio_json(suita_F(domain, w, sm));
  }
  write_text(c, render_scalar(j, c.format), out);
  return 0;
}

std::string json_path_for(const std::string& csv_path) {
  std::filesystem::path p(csv_path);
  p.replace_extension(".json");
  if (p == std::filesystem::path(csv_path)) p += ".report.json";
  return p.string();
}

int cmd_scan(const Common& c, const FamilyFlags& f, std::ostream& out) {
  FigureScanRequest req;
  if (f.family.empty() || f.m.empty()) throw ValidationError("scan needs --family and --m");
  req.family = f.family == "ell1" ? FigureFamily::ell1 : FigureFamily::pfamily;
  req.m_values = parse_double_list(f.m);
  if (req.family == FigureFamily::ell1) {
    if (f.n.empty()) throw ValidationError("scan --family ell1 needs --n");
    req.n_values = parse_int_list(f.n);
  }
  req.grid = c.grid ? c.grid : 200;
  FigureTable table;
  ExperimentReport rep = figure_scan(req, &table);
  rep.seed = c.seed;
  const std::string report = nlohmann::json(rep).dump(2) + "\n";
  std::ostringstream csv;
  table.write_csv(csv);
  if (c.format == "json") {
    write_text(c, report, out);
  } else {
    write_text(c, csv.str(), out);
    if (!c.out.empty()) write_file(json_path_for(c.out), report);
  }
  return 0;
}

int cmd_experiment(const Common& c, const DomainFlags& d, const std::string& kind,
                   const std::string& t_list, const std::string& r_list, std::ostream& out) {
  ExperimentReport rep;
  const std::size_t count = c.samples ? c.samples : 200'000;
  const SampleStream stream{2, c.seed, SampleKind::low_discrepancy};
  if (kind == "reverse-suita") {
    const std::vector<double> radii =
        r_list.empty() ? std::vector<double>{0.5, 0.1, 0.01, 1e-4} : parse_double_list(r_list);
    rep.kind = "reverse-suita";
    rep.grid = radii;
    Verdict lower{"K/c^2 >= -2 log r / pi^3", true, true, ""};
    Verdict suita{"c^2 <= pi K", true, true, ""};
    for (double r : radii) {
      const auto chk = check_reverse_suita(r);
      rep.samples.push_back({r, chk.ratio, 0.0});
      lower.passed = lower.passed && chk.holds();
      suita.passed = suita.passed && chk.suita_holds();
      lower.detail += fmt::format("r={}: {:.6g} vs {:.6g}; ", r, chk.ratio, chk.bound);
    }
    rep.verdicts = {lower, suita};
  } else {
    const DomainSpec domain = make_domain(d);
    const Point w = make_point(d, domain);
    const std::vector<double> grid =
        t_list.empty() ? std::vector<double>{-6.0, -5.0, -4.0, -3.0, -2.0, -1.0, -0.5}
                       : parse_double_list(t_list);
    if (kind == "monotonicity") {
      rep = monotonicity_experiment(domain, w[0], grid, stream, count);
    } else if (kind == "lower-bound") {
      rep.kind = "lower-bound";
      rep.grid = grid;
      rep.seed = c.seed;
      rep.sample_count = count;
      rep.tolerances = {{"sigmas", 3.0}};
      Verdict v{"K - 1/normalized volume >= -3 sigma", true, true, ""};
      for (double t : grid) {
        const auto chk = check_lower_bound_est1(domain, w[0], t, stream, count);
        rep.samples.push_back({t, chk.margin, chk.sigma});
        v.passed = v.passed && chk.holds();
        v.detail += fmt::format("t={}: {:.6g}; ", t, chk.margin);
      }
      rep.verdicts = {v};
    } else {
      throw ValidationError("experiment: unknown --kind '" + kind + "'");
    }
  }
  rep.seed = c.seed;
  write_text(c, nlohmann::json(rep).dump(2) + "\n", out);
  return 0;
}

int cmd_verify_all(const Common& c, bool quick, std::ostream& out) {
  AcceptanceOptions opt;
  opt.quick = quick;
  opt.seed = c.seed;
  if (c.samples) opt.samples = c.samples;
  const auto results = run_acceptance(opt, [&](const CriterionResult& r) { print_result(out, r); });
  return all_passed(results) ? 0 : 2;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bergman kernels, indicatrix volumes and the invariant F = (K lambda(I))^(1/n)",
               "bergsuita"};
  app.footer(kFormats);
  app.require_subcommand(1);

  Common common;
  DomainFlags dom;
  FamilyFlags fam;
  std::string t_list, r_list, kind = "monotonicity", method = "auto";
  bool sublevel = false, maximize = false, quick = false;
  std::optional<double> p1, p2;

  auto* kernel = app.add_subcommand("kernel", "Bergman kernel on the diagonal K(w)");
  add_common(kernel, common, false, false);
  add_domain(kernel, dom);
  add_family(kernel, fam, false);

  auto* green = app.add_subcommand("green", "Green function, Robin constant, level sets");
  add_common(green, common, true, true);
  add_domain(green, dom);
  green->add_option("--t", t_list, "levels t < 0 (comma list)");
  green->add_flag("--sublevel", sublevel, "sampled sublevel volumes on --t (CSV)");

  auto* ind = app.add_subcommand("indicatrix", "indicatrix profiles and volumes");
  add_common(ind, common, false, true);
  add_domain(ind, dom);
  add_family(ind, fam, false);
  ind->add_option("--p1", p1, "E(p1,p2) exponent p1 (geodesic envelope)");
  ind->add_option("--p2", p2, "E(p1,p2) exponent p2");

  auto* sf = app.add_subcommand("suita-f", "the invariant F at a point");
  add_common(sf, common, false, false);
  add_domain(sf, dom);
  add_family(sf, fam, false);
  sf->add_option("--method", method, "auto, closed or numeric")
      ->check(CLI::IsMember({"auto", "closed", "numeric"}));
  sf->add_flag("--maximize", maximize, "maximize F over b for the family");

  auto* scan = app.add_subcommand("scan", "figure scans of F along the axis (CSV + JSON)");
  add_common(scan, common, false, true);
  add_family(scan, fam, true);

  auto* exp = app.add_subcommand("experiment", "sampled one-variable experiments (JSON)");
  add_common(exp, common, true, false);
  add_domain(exp, dom);
  exp->add_option("--kind", kind, "monotonicity, lower-bound or reverse-suita")
      ->check(CLI::IsMember({"monotonicity", "lower-bound", "reverse-suita"}));
  exp->add_option("--t", t_list, "levels t < 0 (comma list)");
  exp->add_option("--r", r_list, "annulus radii for reverse-suita");

  auto* verify = app.add_subcommand("verify-all", "run the acceptance suite");
  verify->add_option("--samples", common.samples, "sample count for sampled criteria");
  verify->add_option("--seed", common.seed, "seed (default 0)");
  verify->add_flag("--quick", quick, "skip sampled criteria");

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      if (e.get_exit_code() == 0) {
        app.exit(e, out, err);
        return 0;
      }
      err << "error: " << e.what() << "\n";
      return 1;
    }
    if (kernel->parsed()) return cmd_kernel(common, dom, fam, out);
    if (green->parsed()) return cmd_green(common, dom, t_list, sublevel, out);
    if (ind->parsed()) return cmd_indicatrix(common, dom, fam, p1, p2, out);
    if (sf->parsed()) return cmd_suita(common, dom, fam, method, maximize, out);
    if (scan->parsed()) return cmd_scan(common, fam, out);
    if (exp->parsed()) return cmd_experiment(common, dom, kind, t_list, r_list, out);
    if (verify->parsed()) return cmd_verify_all(common, quick, out);
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::out_of_range& e) {
    err << "validation error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "numerical error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"bergsuita"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bergsuita::cli
