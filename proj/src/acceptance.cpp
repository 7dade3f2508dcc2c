#include "bergsuita/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/core.h>

#include "bergsuita/bergman.hpp"
#include "bergsuita/domains.hpp"
#include "bergsuita/green1d.hpp"
#include "bergsuita/indicatrix.hpp"
#include "bergsuita/suita.hpp"

namespace bergsuita {

namespace {

constexpr double kPi = std::numbers::pi;
const Tolerance kTight{0.0, 1e-15, 200};

double rel_diff(double x, double ref) { return std::abs(x - ref) / std::abs(ref); }

struct Outcome {
  bool passed = false;
  std::string detail;
};

using Check = std::function<Outcome()>;

struct Criterion {
  std::string id;
  std::string name;
  bool sampled = false;
  Check check;
};

Outcome c1_form_consistency() {
  double worst = 0.0;
  for (double b : {0.1, 0.5, 0.9})
    for (double m : {0.5, 1.0, 2.0})
      for (int n : {2, 3, 4}) {
        const EllipsoidFamilyParams params{m, n, b};
        const double product = product_closed_form(params);
        const double factors = kernel_deflated(params).value * indicatrix_volume_closed(params);
        worst = std::max(worst, rel_diff(factors, product));
      }
  return {worst < 1e-12, fmt::format("max rel error {:.2e} over 27 points", worst)};
}

Outcome c2a_argmax() {
  const auto res = maximize_F_family(0.5, 3);
  const double err = std::abs(res.argmax - 0.163501);
  return {err <= 5e-5, fmt::format("b* = {:.9f}, |b* - 0.163501| = {:.2e}", res.argmax, err)};
}

Outcome c2b_max_value() {
  const auto res = maximize_F_family(0.5, 3);
  const double err = std::abs(res.value - 1.004178);
  return {err <= 5e-6, fmt::format("F* = {:.10f}, |F* - 1.004178| = {:.2e}", res.value, err)};
}

Outcome c3_bidisk() {
  const SuitaRatio s = suita_F_g2();
  const double target = 2.0 / std::sqrt(3.0);
  const double err = std::abs(s.F - target);
  const double vol_err = rel_diff(s.indicatrix_volume, 2.0 * kPi * kPi / 3.0);
  const bool ok = err <= 1e-10 && vol_err <= 1e-10 && s.kernel.value == 2.0 / (kPi * kPi);
  return {ok, fmt::format("F = {:.13f}, |F - 2/sqrt3| = {:.2e}, volume rel err {:.2e}", s.F, err,
                          vol_err)};
}

Outcome c4_volume_formula() {
  double worst = 0.0;
  for (double p : {1.0, 2.0, 5.0}) {
    const std::vector<double> exps{0.5, 1.0 / p};
    const double v = ellipsoid_volume(exps);
    worst = std::max(worst, rel_diff(v, 2.0 * kPi * kPi / ((p + 1.0) * (p + 2.0))));
  }
  return {worst < 1e-12, fmt::format("max rel error {:.2e} for p in {{1,2,5}}", worst)};
}

Outcome c5_kernel_cross() {
  double worst = 0.0;
  for (double p : {1.0, 2.0})
    for (double b : {0.3, 0.6}) {
      const DomainSpec domain = DomainSpec::ellipsoid({0.5, 1.0 / p});
      const Point w{b, 0.0};
      const double series = kernel_reinhardt(domain, w, kTight).value;
      worst = std::max(worst, rel_diff(series, kernel_ellipsoid_closed(p, b).value));
    }
  return {worst < 1e-8, fmt::format("max rel error {:.2e} over 4 points", worst)};
}

Outcome c6_geodesic_volume() {
  double worst = 0.0;
  for (double m : {0.5, 1.0, 2.0})
    for (double b : {0.2, 0.5}) {
      const double numeric = indicatrix_volume_numeric(0.5, m, b);
      const double closed = indicatrix_volume_closed({m, 2, b});
      worst = std::max(worst, rel_diff(numeric, closed));
    }
  return {worst < 1e-4, fmt::format("max rel error {:.2e} over 6 points", worst)};
}

Outcome c7_large_m() {
  const auto res = maximize_F_pfamily(128.0);
  const double err = std::abs(res.value - 1.010182);
  return {err <= 2e-3,
          fmt::format("F* = {:.7f} at b = {:.5f}, |F* - 1.010182| = {:.2e}", res.value,
                      res.argmax, err)};
}

Outcome c8_reverse_suita() {
  bool ok = true;
  std::string detail;
  for (double r : {0.5, 0.1, 0.01}) {
    const auto c = check_reverse_suita(r);
    ok = ok && c.holds();
    detail += fmt::format("r={}: K/c^2 = {:.4g} >= {:.4g}; ", r, c.ratio, c.bound);
  }
  const double big = check_reverse_suita(1e-4).ratio, small = check_reverse_suita(1e-2).ratio;
  ok = ok && big > small;
  detail += fmt::format("ratio(1e-4) = {:.4g} > ratio(1e-2) = {:.4g}; ", big, small);

  const double r = 0.2;
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 10; ++k) {
    const double s = r + (1.0 - r) * k / 11.0;
    const double c = robin_capacity(solve_green_annulus(r, s));
    const double K = kernel_annulus(r, s, kTight).value;
    worst = std::min(worst, kPi * K - c * c);
  }
  ok = ok && worst > 0.0;
  detail += fmt::format("min(pi K - c^2) over 10 radii = {:.4g}", worst);
  return {ok, detail};
}

Outcome c9_green_quality() {
  const double r = 0.2;
  const Complex w = std::sqrt(r);
  const GreenSeries1D g = solve_green_annulus(r, w);

  double residual = 0.0;
  for (int i = 0; i < 512; ++i) {
    const Complex e = std::polar(1.0, 2.0 * kPi * i / 512.0);
    residual = std::max({residual, std::abs(g(e)), std::abs(g(r * e))});
  }
  const bool residual_ok = residual < 1e-8 && g.residual_bound() < 1e-8;

  double flux_err = 0.0;
  std::string levels;
  for (double t : {-3.0, -1.5, -0.5}) {
    const LevelReport rep = level_flux_and_isoperimetric(g, t);
    flux_err = std::max(flux_err, std::abs(rep.flux - 2.0 * kPi));
    levels += fmt::format("{}({}) ", t, rep.components);
  }
  const bool flux_ok = flux_err <= 1e-6;

  std::mt19937_64 rng(mix_seed(20));
  std::uniform_real_distribution<double> radius(r + 0.05, 0.95), angle(0.0, 2.0 * kPi);
  double sym = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Complex z = std::polar(radius(rng), angle(rng));
    const Complex v = std::polar(radius(rng), angle(rng));
    const double gzv = solve_green_annulus(r, v)(z);
    const double gvz = solve_green_annulus(r, z)(v);
    sym = std::max(sym, std::abs(gzv - gvz));
  }
  const bool sym_ok = sym <= 1e-8;

  return {residual_ok && flux_ok && sym_ok,
          fmt::format("boundary residual {:.2e} (bound {:.2e}); max |flux - 2pi| {:.2e} at "
                      "levels {}(components); max |G(z,w) - G(w,z)| {:.2e}",
                      residual, g.residual_bound(), flux_err, levels, sym)};
}

Outcome c10_monotonicity(const AcceptanceOptions& opt) {
  const double r = 0.2;
  const SampleStream stream{2, opt.seed, SampleKind::low_discrepancy};
  const auto rep = monotonicity_experiment(DomainSpec::annulus(r), std::sqrt(r),
                                           {-6.0, -5.0, -4.0, -3.0, -2.0, -1.0, -0.5}, stream,
                                           opt.samples);
  std::string detail;
  for (const auto& v : rep.verdicts)
    detail += fmt::format("[{}{}: {}] ", v.name, v.asserted ? "" : ", evidence", v.detail);
  return {rep.passed(), detail};
}

Outcome c11_lower_bound(const AcceptanceOptions& opt) {
  bool ok = true;
  std::string detail;
  const SampleStream stream{2, opt.seed, SampleKind::low_discrepancy};
  for (double t : {-3.0, -2.0, -1.0}) {
    const auto c = check_lower_bound_est1(DomainSpec::ball(1), 0.0, t, stream, 0);
    ok = ok && c.exact && c.margin == 0.0;
    detail += fmt::format("disk t={}: margin {}; ", t, c.margin);
  }
  if (!opt.quick) {
    const double r = 0.2;
    for (double t : {-2.0, -1.0}) {
      const auto c = check_lower_bound_est1(DomainSpec::annulus(r), std::sqrt(r), t, stream,
                                            opt.samples);
      ok = ok && c.holds() && c.margin > 0.0;
      detail += fmt::format("annulus t={}: margin {:.4g} (sigma {:.2g}); ", t, c.margin, c.sigma);
    }
  } else {
    detail += "annulus part skipped (quick)";
  }
  return {ok, detail};
}

Outcome c12_convex_bounds() {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t count = 0;
  const auto take = [&](double F) {
    lo = std::min(lo, F);
    hi = std::max(hi, F);
    ++count;
  };
  FigureScanRequest req;
  req.family = FigureFamily::ell1;
  req.m_values = {0.5};
  req.n_values = {2, 3, 4, 5, 6};
  for (const auto& row : figure_scan_table(req).rows) take(row.F);
  for (double m : {0.5, 1.0, 2.0, 8.0})
    for (int n : {2, 3, 4})
      for (int i = 1; i <= 19; ++i) take(suita_F_family({m, n, i / 20.0}).F);
  for (double m : {0.5, 2.0, 8.0, 32.0, 128.0})
    for (double b : {0.1, 0.5, 0.9}) take(suita_F_pfamily(m, b).F);

  double center_hi = -std::numeric_limits<double>::infinity();
  double center_lo = std::numeric_limits<double>::infinity();
  for (const DomainSpec& d :
       {DomainSpec::ball(2), DomainSpec::ball(3), DomainSpec::polydisk(2),
        DomainSpec::ellipsoid({1.0, 2.0}), DomainSpec::ellipsoid({0.5, 0.5, 3.0}),
        DomainSpec::ellipsoid({1.0, 4.0}, {1.0, 2.0})}) {
    const double F = suita_F_balanced(d).F;
    center_hi = std::max(center_hi, F);
    center_lo = std::min(center_lo, F);
    take(F);
  }
  const bool ok = lo >= 1.0 - 1e-10 && hi <= 4.0 && center_hi <= 16.0 / (kPi * kPi) &&
                  center_lo >= 1.0 - 1e-10;
  return {ok, fmt::format("{} values in [{:.12f}, {:.9f}]; centers in [{:.15f}, {:.15f}]", count,
                          lo, hi, center_lo, center_hi)};
}

Outcome c13_properties() {
  std::string detail;
  // C^1 contact of the profile at r = 2b(1-b): quadratic on the left, linear
  // on the right, so these stencils are exact up to rounding.
  double contact = 0.0;
  for (double b : {0.2, 0.5, 0.7}) {
    const auto prof = kobayashi_profile_p1half(1.0, 2, b);
    const double x = prof.knots.front(), h = 0.1 * x;
    const auto& g = prof.gamma;
    const double left_slope = (3.0 * g(x) - 4.0 * g(x - h) + g(x - 2.0 * h)) / (2.0 * h);
    const double right_slope = (g(x + h) - g(x)) / h;
    const double right_value = 2.0 * g(x + h) - g(x + 2.0 * h);
    contact = std::max({contact, std::abs(g(x) - right_value), std::abs(left_slope - right_slope)});
  }
  detail += fmt::format("profile contact {:.1e}; ", contact);

  double center = 0.0, levels = 0.0;
  for (const DomainSpec& d : {DomainSpec::ball(2), DomainSpec::polydisk(2),
                              DomainSpec::ellipsoid({1.0, 2.0}), DomainSpec::ball(1)}) {
    center = std::max(center, std::abs(suita_F_balanced(d).F - 1.0));
    const double vol = volume(d);
    for (double t : {-3.0, -1.0, -0.25})
      levels = std::max(levels, rel_diff(sublevel_volume(d, t).normalized, vol));
  }
  detail += fmt::format("|F - 1| at centers {:.1e}; sublevel identity {:.1e}; ", center, levels);

  double scaling = 0.0;
  const double c = 1.7;
  const DomainSpec base = DomainSpec::ellipsoid({1.0, 2.0}, {1.0, 0.8});
  const DomainSpec scaled = DomainSpec::ellipsoid({1.0, 2.0}, {c, 0.8 * c});
  const Point w{Complex(0.3, 0.1), Complex(0.2, 0.0)};
  const Point cw{c * w[0], c * w[1]};
  const double k0 = kernel_reinhardt(base, w, kTight).value;
  const double k1 = kernel_reinhardt(scaled, cw, kTight).value;
  scaling = std::max(scaling, rel_diff(k1 * std::pow(c, 4), k0));
  scaling = std::max(scaling, rel_diff(suita_F_balanced(scaled).F, suita_F_balanced(base).F));
  detail += fmt::format("scaling covariance {:.1e}", scaling);

  return {contact <= 1e-12 && center <= 1e-12 && levels <= 1e-12 && scaling <= 1e-12, detail};
}

}  // namespace

std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options,
    const std::function<void(const CriterionResult&)>& on_result) {
  const std::vector<Criterion> criteria{
      {"1", "product formula equals kernel x indicatrix volume", false, c1_form_consistency},
      {"2a", "maximizer b* for m=1/2, n=3", false, c2a_argmax},
      {"2b", "maximum F* for m=1/2, n=3", false, c2b_max_value},
      {"3", "symmetrized bidisk F = 2/sqrt3", false, c3_bidisk},
      {"4", "Gamma-product volume of E(1/2,1/p)", false, c4_volume_formula},
      {"5", "monomial series vs closed-form kernel", false, c5_kernel_cross},
      {"6", "geodesic envelope volume vs closed form", false, c6_geodesic_volume},
      {"7", "p-family maximum at m=128", false, c7_large_m},
      {"8", "annulus reverse-Suita failure and Suita direction", false, c8_reverse_suita},
      {"9", "annulus Green solver quality", false, c9_green_quality},
      {"10", "monotone normalized sublevel volume (annulus)", true,
       [&] { return c10_monotonicity(options); }},
      {"11", "kernel lower bound via sublevel volume", false,
       [&] { return c11_lower_bound(options); }},
      {"12", "convex-family F within [1, 4], centers <= 16/pi^2", false, c12_convex_bounds},
      {"13", "profile contact, center identities, scaling covariance", false, c13_properties},
  };

  std::vector<CriterionResult> results;
  for (const auto& c : criteria) {
    CriterionResult res{c.id, c.name, false, false, "", 0.0};
    const auto start = std::chrono::steady_clock::now();
    if (c.sampled && options.quick) {
      res.skipped = true;
      res.detail = "sampled criterion skipped (quick)";
    } else {
      try {
        const Outcome o = c.check();
        res.passed = o.passed;
        res.detail = o.detail;
      } catch (const std::exception& e) {
        res.detail = std::string("error: ") + e.what();
      }
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (on_result) on_result(res);
    results.push_back(std::move(res));
  }
  return results;
}

void print_result(std::ostream& out, const CriterionResult& r) {
  const char* tag = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
  out << fmt::format("{}  {:>3}  {}  ({:.1f}s)  {}\n", tag, r.id, r.name, r.seconds, r.detail);
  out.flush();
}

bool all_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.skipped && !r.passed) return false;
  return true;
}

}  // namespace bergsuita
