#include "bergsuita/suita.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

#include "bergsuita/indicatrix.hpp"

namespace bergsuita {

namespace {

constexpr double kPi = std::numbers::pi;
const Tolerance kSeriesTol{0.0, 1e-15, 200};

bool is_origin(std::span<const Complex> w) {
  return std::all_of(w.begin(), w.end(), [](Complex c) { return c == 0.0; });
}

// (1+b)^a - (1-b)^a - 2ab; odd binomial series below b = 0.1.
double odd_binomial_excess(double a, double b) {
  if (b >= 0.1) return std::pow(1.0 + b, a) - std::pow(1.0 - b, a) - 2.0 * a * b;
  double coeff = a;  // C(a, k)
  double bk = b;
  double sum = 0.0;
  for (int k = 1; k < 400; ++k) {
    if (k % 2 == 1 && k >= 3) {
      const double term = 2.0 * coeff * bk;
      sum += term;
      if (std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    coeff *= (a - k) / (k + 1.0);
    bk *= b;
  }
  return sum;
}

SuitaRatio make_ratio(KernelValue k, double vol, int n, ConvexityClass cls) {
  SuitaRatio s;
  s.kernel = k;
  s.indicatrix_volume = vol;
  s.n = n;
  s.F = std::pow(k.value * vol, 1.0 / n);
  s.classification = cls;
  return s;
}

}  // namespace

std::string to_string(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::c_convex: return "C-convex";
    case ConvexityClass::convex: return "convex";
    case ConvexityClass::symmetric: return "convex-symmetric";
    case ConvexityClass::none: return "none";
  }
  return "none";
}

double bound_constant(ConvexityClass c) {
  switch (c) {
    case ConvexityClass::c_convex: return 16.0;
    case ConvexityClass::convex: return 4.0;
    case ConvexityClass::symmetric: return 16.0 / (kPi * kPi);
    case ConvexityClass::none: break;
  }
  return std::numeric_limits<double>::infinity();
}

bool SuitaRatio::within_bounds(double tol) const {
  return F >= 1.0 - tol && F <= bound() + tol;
}

bool ReverseSuitaCheck::suita_holds() const { return capacity * capacity <= kPi * kernel; }

double product_closed_form(const EllipsoidFamilyParams& params) {
  params.validate();
  const double a = params.a(), b = params.b;
  const double value = 1.0 + std::pow(1.0 - b, a) * odd_binomial_excess(a, b) /
                                 (2.0 * a * b * std::pow(1.0 + b, a));
  const double factors = kernel_deflated(params).value * indicatrix_volume_closed(params);
  if (std::abs(value - factors) > 1e-12 * std::abs(value))
    throw NumericalError(fmt::format(
        "product closed form {} disagrees with kernel x volume {} (m={}, n={}, b={})", value,
        factors, params.m, params.n, b));
  return value;
}

SuitaRatio suita_F_family(const EllipsoidFamilyParams& params) {
  const double product = product_closed_form(params);
  const KernelValue k = kernel_deflated(params);
  SuitaRatio s = make_ratio(k, indicatrix_volume_closed(params), params.n,
                            ConvexityClass::convex);
  s.F = std::pow(product, 1.0 / params.n);
  return s;
}

namespace {

SuitaRatio numeric_two_dim(double p1, double p2, double b) {
  if (!(b > 0.0 && b < 1.0)) throw ValidationError("F: b outside (0,1)");
  const DomainSpec domain = DomainSpec::ellipsoid({p1, p2});
  const Point w{b, 0.0};
  const KernelValue k = kernel_reinhardt(domain, w, kSeriesTol);
  return make_ratio(k, indicatrix_volume_numeric(p1, p2, b), 2, ConvexityClass::convex);
}

}  // namespace

SuitaRatio suita_F_pfamily(double m, double b) { return numeric_two_dim(m, 1.0, b); }

SuitaRatio suita_F_g2() {
  return make_ratio(kernel_g2_center(), azukawa_g2_center().volume(), 2,
                    ConvexityClass::c_convex);
}

SuitaRatio suita_F_balanced(const DomainSpec& domain) {
  const Point origin(domain.dimension(), 0.0);
  const KernelValue k = kernel_reinhardt(domain, origin, kSeriesTol);
  return make_ratio(k, azukawa_balanced(domain).volume(), domain.dimension(),
                    ConvexityClass::symmetric);
}

SuitaRatio suita_F(const DomainSpec& domain, std::span<const Complex> w, SuitaMethod method) {
  if (static_cast<int>(w.size()) != domain.dimension())
    throw ValidationError("suita_F: base point dimension differs from the domain");
  if (!contains(domain, w)) throw ValidationError("suita_F: base point outside the domain");

  if (domain.is_balanced() && is_origin(w)) return suita_F_balanced(domain);
  if (std::holds_alternative<SymmetrizedBidisk>(domain.variant()) && is_origin(w))
    return suita_F_g2();

  if (const auto* e = std::get_if<Ellipsoid>(&domain.variant())) {
    const int n = domain.dimension();
    const bool unit = std::all_of(e->radii.begin(), e->radii.end(),
                                  [](double r) { return r == 1.0; });
    const bool on_axis = w[0].imag() == 0.0 && w[0].real() > 0.0 &&
                         std::all_of(w.begin() + 1, w.end(), [](Complex c) { return c == 0.0; });
    if (unit && on_axis && n >= 2) {
      const double b = w[0].real();
      const bool family = e->p[0] == 0.5 &&
                          std::all_of(e->p.begin() + 2, e->p.end(),
                                      [&](double p) { return p == e->p[1]; });
      if (family && method != SuitaMethod::numeric)
        return suita_F_family({e->p[1], n, b});
      if (n == 2 && method != SuitaMethod::closed_form)
        return numeric_two_dim(e->p[0], e->p[1], b);
    }
  }
  throw ValidationError("suita_F: unsupported domain/base point combination for " +
                        domain.name());
}

MaximizeResult maximize_F_family(double m, int n, double x_tol) {
  EllipsoidFamilyParams{m, n, 0.5}.validate();
  const auto f = [&](double b) {
    return std::pow(product_closed_form({m, n, b}), 1.0 / n);
  };
  return maximize_golden(f, 1e-4, 1.0 - 1e-4, 64, x_tol);
}

MaximizeResult maximize_F_pfamily(double m, double x_tol) {
  if (!(m >= 0.5)) throw ValidationError("maximize_F_pfamily: m < 1/2");
  const auto f = [&](double b) { return suita_F_pfamily(m, b).F; };
  return maximize_golden(f, 1e-4, 1.0 - 1e-4, 64, x_tol);
}

LowerBoundCheck check_lower_bound_est1(const DomainSpec& domain, Complex w, double t,
                                       const SampleStream& stream, std::size_t count) {
  LowerBoundCheck out;
  const int n = domain.dimension();
  if (domain.is_balanced() && w == 0.0) {
    const Point origin(n, 0.0);
    out.kernel = kernel_reinhardt(domain, origin, kSeriesTol).value;
    out.normalized_volume = sublevel_volume(domain, t).normalized;
    out.margin = out.kernel - 1.0 / out.normalized_volume;
    out.exact = true;
    return out;
  }

  std::optional<GreenSeries1D> green;
  if (const auto* a = std::get_if<Annulus>(&domain.variant())) {
    green = solve_green_annulus(a->r, w);
    out.kernel = kernel_annulus(a->r, w, kSeriesTol).value;
  } else if (std::holds_alternative<Ball>(domain.variant()) && n == 1) {
    green = GreenSeries1D::disk(w);
    out.kernel = kernel_disk(w).value;
  } else {
    throw ValidationError("check_lower_bound_est1: unsupported domain " + domain.name());
  }
  const VolumeEstimate v = sublevel_volume(*green, t, stream, count);
  if (!v.resolved)
    throw NumericalError(fmt::format("est1: sublevel volume at t = {} unresolved", t));
  out.normalized_volume = v.normalized;
  out.margin = out.kernel - 1.0 / v.normalized;
  out.sigma = v.normalized_error / (v.normalized * v.normalized);
  return out;
}

ReverseSuitaCheck check_reverse_suita(double r) {
  if (!(r > 0.0 && r < 1.0)) throw ValidationError("check_reverse_suita: r outside (0,1)");
  ReverseSuitaCheck out;
  out.r = r;
  const Complex w = std::sqrt(r);
  out.kernel = kernel_annulus(r, w, kSeriesTol).value;
  out.capacity = robin_capacity(solve_green_annulus(r, w));
  out.ratio = out.kernel / (out.capacity * out.capacity);
  out.bound = -2.0 * std::log(r) / (kPi * kPi * kPi);
  return out;
}

ExperimentReport monotonicity_experiment(const DomainSpec& domain, Complex w,
                                         const std::vector<double>& t_grid,
                                         const SampleStream& stream, std::size_t count) {
  if (t_grid.size() < 2) throw ValidationError("monotonicity_experiment: need >= 2 levels");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw ValidationError("monotonicity_experiment: t grid must be strictly increasing");

  ExperimentReport rep;
  rep.kind = "monotonicity";
  rep.grid = t_grid;
  rep.seed = stream.seed;
  rep.sample_count = count;
  rep.tolerances = {{"monotone_sigmas", 3.0}, {"limit_rel", 0.02}, {"convexity_sigmas", 3.0}};

  std::vector<double> lambda, lambda_err, norm, norm_err;
  double capacity = 1.0;
  if (domain.is_balanced() && domain.dimension() == 1 && w == 0.0) {
    for (double t : t_grid) {
      const auto v = sublevel_volume(domain, t);
      lambda.push_back(v.value);
      lambda_err.push_back(0.0);
      norm.push_back(v.normalized);
      norm_err.push_back(0.0);
    }
  } else {
    std::optional<GreenSeries1D> green;
    if (const auto* a = std::get_if<Annulus>(&domain.variant()))
      green = solve_green_annulus(a->r, w);
    else if (std::holds_alternative<Ball>(domain.variant()) && domain.dimension() == 1)
      green = GreenSeries1D::disk(w);
    else
      throw ValidationError("monotonicity_experiment: needs the disk or an annulus");
    capacity = robin_capacity(*green);
    const SublevelCurve curve = sublevel_curve(*green, t_grid, stream, count);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
      if (!(curve.std_error[i] <= curve.lambda[i]) || curve.lambda[i] <= 0.0)
        throw NumericalError(fmt::format(
            "monotonicity_experiment: volume at t = {} unresolved with {} samples", t_grid[i],
            count));
    }
    lambda = curve.lambda;
    lambda_err = curve.std_error;
    norm = curve.normalized;
    norm_err = curve.normalized_error;
  }

  for (std::size_t i = 0; i < t_grid.size(); ++i)
    rep.samples.push_back({t_grid[i], norm[i], norm_err[i]});

  // Non-decreasing within 3 sigma.
  {
    Verdict v{"normalized volume non-decreasing", true, true, ""};
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < norm.size(); ++i) {
      const double sigma = std::hypot(norm_err[i], norm_err[i + 1]);
      const double slack = norm[i + 1] - norm[i] + 3.0 * sigma;
      worst = std::min(worst, slack);
      if (slack < 0.0) v.passed = false;
    }
    v.detail = fmt::format("min(step + 3 sigma) = {:.6e}", worst);
    rep.verdicts.push_back(v);
  }
  // Limit at the most negative level.
  {
    const double target = kPi / (capacity * capacity);
    const double rel = std::abs(norm.front() - target) / target;
    rep.verdicts.push_back({"limit pi/c^2 at lowest level", rel <= 0.02, true,
                            fmt::format("value {:.8g}, pi/c^2 {:.8g}, rel diff {:.3e}",
                                        norm.front(), target, rel)});
  }
  // Convexity of log lambda: evidence only.
  {
    Verdict v{"log volume convex (evidence)", true, false, ""};
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < t_grid.size(); ++i) {
      const double l0 = std::log(lambda[i - 1]), l1 = std::log(lambda[i]),
                   l2 = std::log(lambda[i + 1]);
      const double s_left = (l1 - l0) / (t_grid[i] - t_grid[i - 1]);
      const double s_right = (l2 - l1) / (t_grid[i + 1] - t_grid[i]);
      const auto rel_err = [&](std::size_t k) { return lambda_err[k] / lambda[k]; };
      const double sigma =
          std::sqrt(std::pow(rel_err(i - 1) / (t_grid[i] - t_grid[i - 1]), 2) +
                    std::pow(rel_err(i) * (1.0 / (t_grid[i] - t_grid[i - 1]) +
                                           1.0 / (t_grid[i + 1] - t_grid[i])),
                             2) +
                    std::pow(rel_err(i + 1) / (t_grid[i + 1] - t_grid[i]), 2));
      const double slack = s_right - s_left + 3.0 * sigma;
      worst = std::min(worst, slack);
      if (slack < 0.0) v.passed = false;
    }
    v.detail = fmt::format("min(slope increase + 3 sigma) = {:.6e}", worst);
    rep.verdicts.push_back(v);
  }
  return rep;
}

FigureTable figure_scan_table(const FigureScanRequest& req) {
  if (req.grid < 1) throw ValidationError("figure_scan: grid must be >= 1");
  if (req.m_values.empty()) throw ValidationError("figure_scan: no m values");
  FigureTable table;
  const auto b_at = [&](int i) { return static_cast<double>(i) / (req.grid + 1); };

  if (req.family == FigureFamily::ell1) {
    if (req.m_values.size() != 1 || req.n_values.empty())
      throw ValidationError("figure_scan: ell1 family takes one m and a list of n");
    const double m = req.m_values.front();
    for (int n : req.n_values) {
      const std::string curve = fmt::format("ell1 m={} n={}", m, n);
      for (int i = 1; i <= req.grid; ++i) {
        const double b = b_at(i);
        table.rows.push_back({curve, b, std::pow(product_closed_form({m, n, b}), 1.0 / n)});
      }
    }
    return table;
  }

  for (double m : req.m_values) {
    const std::string curve = fmt::format("p m={}", m);
    std::vector<double> values(req.grid);
    parallel_for(values.size(), [&](std::size_t i) {
      values[i] = suita_F_pfamily(m, b_at(static_cast<int>(i) + 1)).F;
    });
    for (int i = 1; i <= req.grid; ++i) table.rows.push_back({curve, b_at(i), values[i - 1]});
  }
  return table;
}

std::vector<Verdict> figure_verdicts(const FigureTable& table) {
  std::vector<Verdict> out;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (const auto& row : table.rows) {
    lo = std::min(lo, row.F);
    hi = std::max(hi, row.F);
  }
  out.push_back({"F >= 1 - 1e-10", lo >= 1.0 - 1e-10, true, fmt::format("min F = {:.12f}", lo)});
  out.push_back({"F <= 4 (convex bound)", hi <= 4.0, true, fmt::format("max F = {:.12f}", hi)});

  // Per-curve maxima, in order of first appearance.
  std::vector<std::string> curves;
  for (const auto& row : table.rows)
    if (std::find(curves.begin(), curves.end(), row.curve) == curves.end())
      curves.push_back(row.curve);
  bool all_half_ell1 = !curves.empty();
  for (const auto& name : curves) {
    const FigureRow* best = nullptr;
    for (const auto& row : table.rows)
      if (row.curve == name && (!best || row.F > best->F)) best = &row;
    out.push_back({"max on " + name, true, false,
                   fmt::format("F = {:.9f} at b = {:.6f}", best->F, best->b)});
    all_half_ell1 = all_half_ell1 && name.rfind("ell1 m=0.5 ", 0) == 0;
  }
  if (all_half_ell1)
    out.push_back({"m = 1/2 envelope <= 1.0042", hi <= 1.0042, true,
                   fmt::format("max F = {:.9f}", hi)});
  return out;
}

ExperimentReport figure_scan(const FigureScanRequest& req, FigureTable* table_out) {
  FigureTable table = figure_scan_table(req);
  ExperimentReport rep;
  rep.kind = "figure-scan";
  for (int i = 1; i <= req.grid; ++i) rep.grid.push_back(static_cast<double>(i) / (req.grid + 1));
  for (const auto& row : table.rows) rep.samples.push_back({row.b, row.F, 0.0});
  rep.verdicts = figure_verdicts(table);
  rep.tolerances = {{"lower", 1e-10}, {"convex_bound", 4.0}};
  if (table_out) *table_out = std::move(table);
  return rep;
}

}  // namespace bergsuita
