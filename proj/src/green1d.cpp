#include "bergsuita/green1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/core.h>

namespace bergsuita {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};
// Slack for points computed to lie exactly on a boundary circle.
constexpr double kBoundarySlack = 1e-12;
constexpr double kMinGradient = 1e-4;

}  // namespace

GreenSeries1D GreenSeries1D::disk(Complex w) {
  if (!(std::abs(w) < 1.0))
    throw ValidationError(fmt::format("disk Green function: pole |w| = {} >= 1", std::abs(w)));
  GreenSeries1D g;
  g.w_ = w;
  return g;
}

GreenSeries1D solve_green_annulus(double r, Complex w, const Tolerance& tol) {
  tol.validate();
  if (!(r > 0.0 && r < 1.0))
    throw ValidationError(fmt::format("annulus: inner radius {} outside (0,1)", r));
  if (r > 0.999)
    throw ValidationError(fmt::format("annulus: r = {} > 0.999 is too ill-conditioned", r));
  const double rho_w = std::abs(w);
  if (!(rho_w > r && rho_w < 1.0))
    throw ValidationError(
        fmt::format("annulus: pole |w| = {} outside ({}, 1)", rho_w, r));

  GreenSeries1D g;
  g.r_ = r;
  g.w_ = w;
  // Constant and log|z| terms match -log|z - w| averaged over each circle:
  // 0 on |z| = 1 and -log|w| on |z| = r.
  g.c0_ = 0.0;
  g.c_log_ = -std::log(rho_w) / std::log(r);

  const double q = std::max(rho_w, r / rho_w);
  const double r2 = r * r;
  const auto tail = [&](std::size_t n) {
    return 4.0 * std::pow(q, static_cast<double>(n + 1)) /
           ((n + 1.0) * (1.0 - q) * (1.0 - r2));
  };
  const double target = tol.abs_tol > 0.0 ? tol.abs_tol : 1e-15;
  std::size_t n_terms = 1;
  while (tail(n_terms) > target) {
    if (++n_terms > 200'000)
      throw ConvergenceError(fmt::format(
          "annulus Green series: pole too close to the boundary (q = {})", q));
  }

  // Frequency k of -log|z - w| on the two circles (relative to arg w):
  //   |z| = 1:  rho_w^k / k,          |z| = r:  (r / rho_w)^k / k.
  // Unknowns are the outer amplitude c_k (of z^k) and the inner amplitude e_k
  // of (r/z)^k, both evaluated on their own circle:
  //   [ 1    r^k ] [c_k]   [ f_outer ]
  //   [ r^k  1   ] [e_k] = [ f_inner ]
  const Complex rot = std::polar(1.0, -std::arg(w));
  g.outer_.resize(n_terms);
  g.inner_.resize(n_terms);
  Complex rot_k = 1.0;
  for (std::size_t k = 1; k <= n_terms; ++k) {
    rot_k *= rot;
    const double kd = static_cast<double>(k);
    const double rk = std::pow(r, kd);
    const double f_outer = std::pow(rho_w, kd) / kd;
    const double f_inner = std::pow(r / rho_w, kd) / kd;
    const double det = 1.0 - rk * rk;
    const double c = (f_outer - rk * f_inner) / det;
    const double e = (f_inner - rk * f_outer) / det;
    g.outer_[k - 1] = c * rot_k;
    g.inner_[k - 1] = e * std::conj(rot_k);
  }
  g.residual_bound_ = tail(n_terms);
  return g;
}

bool GreenSeries1D::in_domain(Complex z) const {
  const double m = std::abs(z);
  return m <= 1.0 + kBoundarySlack && m >= r_ * (1.0 - kBoundarySlack);
}

double GreenSeries1D::boundary_distance() const {
  const double m = std::abs(w_);
  return is_disk() ? 1.0 - m : std::min(1.0 - m, m - r_);
}

double GreenSeries1D::harmonic_part(Complex z) const {
  if (!in_domain(z))
    throw ValidationError(fmt::format("Green function: point ({}, {}) outside the domain",
                                      z.real(), z.imag()));
  if (is_disk()) return -std::log(std::abs(1.0 - std::conj(w_) * z));

  // Horner in z and in r/z.
  Complex outer = 0.0, inner = 0.0;
  const Complex y = r_ / z;
  for (std::size_t k = outer_.size(); k-- > 0;) {
    outer = (outer + outer_[k]) * z;
    inner = (inner + inner_[k]) * y;
  }
  return c0_ + c_log_ * std::log(std::abs(z)) + outer.real() + inner.real();
}

double GreenSeries1D::operator()(Complex z) const {
  const double h = harmonic_part(z);
  if (z == w_) return -std::numeric_limits<double>::infinity();
  return std::log(std::abs(z - w_)) + h;
}

Complex GreenSeries1D::derivative(Complex z) const {
  if (is_disk()) {
    const Complex wc = std::conj(w_);
    return 1.0 / (z - w_) + wc / (1.0 - wc * z);
  }
  Complex outer = 0.0, inner = 0.0;
  const Complex y = r_ / z;
  for (std::size_t k = outer_.size(); k-- > 0;) {
    const double kd = static_cast<double>(k + 1);
    outer = outer * z + kd * outer_[k];
    inner = (inner + kd * inner_[k]) * y;
  }
  return 1.0 / (z - w_) + c_log_ / z + outer - inner / z;
}

Complex GreenSeries1D::second_derivative(Complex z) const {
  if (is_disk()) {
    const Complex wc = std::conj(w_);
    const Complex d = 1.0 - wc * z;
    return -1.0 / ((z - w_) * (z - w_)) + wc * wc / (d * d);
  }
  Complex outer = 0.0, inner = 0.0;
  const Complex y = r_ / z;
  for (std::size_t k = outer_.size(); k-- > 1;) {
    const double kd = static_cast<double>(k + 1);
    outer = outer * z + kd * (kd - 1.0) * outer_[k];
  }
  for (std::size_t k = inner_.size(); k-- > 0;) {
    const double kd = static_cast<double>(k + 1);
    inner = (inner + kd * (kd + 1.0) * inner_[k]) * y;
  }
  return -1.0 / ((z - w_) * (z - w_)) - c_log_ / (z * z) + outer + inner / (z * z);
}

double robin_capacity(const GreenSeries1D& green) { return std::exp(green.robin()); }

AnnulusCovering::AnnulusCovering(double r) : r_(r) {
  if (!(r > 0.0 && r < 1.0))
    throw ValidationError(fmt::format("covering map: r = {} outside (0,1)", r));
}

Complex AnnulusCovering::operator()(Complex zeta) const {
  const Complex c = std::log(r_) / (kPi * kI);
  return std::exp(c * std::log(kI * (1.0 + zeta) / (1.0 - zeta)));
}

Complex AnnulusCovering::derivative(Complex zeta) const {
  const Complex c = std::log(r_) / (kPi * kI);
  return (*this)(zeta) * c * 2.0 / (1.0 - zeta * zeta);
}

double AnnulusCovering::capacity_bound() const { return 1.0 / std::abs(derivative(0.0)); }

double covering_capacity_bound(double r) { return AnnulusCovering(r).capacity_bound(); }

VolumeEstimate sublevel_volume(const GreenSeries1D& green, double t,
                               const SampleStream& stream, std::size_t count,
                               int replicates) {
  if (!(t <= 0.0)) throw ValidationError(fmt::format("sublevel_volume: t = {} > 0", t));
  if (replicates < 2) throw ValidationError("sublevel_volume: need >= 2 replicates");
  const auto per = count / static_cast<std::size_t>(replicates);
  if (per < 1) throw ValidationError("sublevel_volume: count < replicates");

  // H >= -log(1 + |w|) on the boundary, so {G < t} lies in the disk of radius
  // e^t (1 + |w|) about w.
  const Complex w = green.pole();
  const double half = std::exp(t) * (1.0 + std::abs(w));
  const double x0 = std::max(-1.0, w.real() - half), x1 = std::min(1.0, w.real() + half);
  const double y0 = std::max(-1.0, w.imag() - half), y1 = std::min(1.0, w.imag() + half);
  const double box_area = (x1 - x0) * (y1 - y0);
  const double r = green.inner_radius();

  std::vector<double> estimates(static_cast<std::size_t>(replicates));
  parallel_for(estimates.size(), [&](std::size_t rep) {
    SampleStream sub = stream.split(rep);
    sub.dimension = 2;
    const auto pts = sample_unit_cube(sub, per);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < per; ++i) {
      const Complex z{x0 + (x1 - x0) * pts[2 * i], y0 + (y1 - y0) * pts[2 * i + 1]};
      const double m = std::abs(z);
      if (!(m < 1.0 && m > r)) continue;
      if (green(z) < t) ++hits;
    }
    estimates[rep] = box_area * static_cast<double>(hits) / static_cast<double>(per);
  });

  double mean = 0.0;
  for (double e : estimates) mean += e;
  mean /= replicates;
  double var = 0.0;
  for (double e : estimates) var += (e - mean) * (e - mean);
  var /= (replicates - 1.0);

  VolumeEstimate out;
  out.value = mean;
  out.std_error = std::sqrt(var / replicates);
  const double scale = std::exp(-2.0 * t);
  out.normalized = scale * out.value;
  out.normalized_error = scale * out.std_error;
  out.resolved = out.std_error <= out.value && out.value > 0.0;
  return out;
}

VolumeEstimate sublevel_volume(const DomainSpec& balanced, double t) {
  if (!(t <= 0.0)) throw ValidationError(fmt::format("sublevel_volume: t = {} > 0", t));
  if (!balanced.is_balanced())
    throw ValidationError("sublevel_volume: " + balanced.name() + " is not balanced");
  const double vol = volume(balanced);
  VolumeEstimate out;
  out.value = std::exp(2.0 * balanced.dimension() * t) * vol;
  out.normalized = vol;
  out.exact = true;
  return out;
}

std::optional<Complex> critical_point(const GreenSeries1D& green) {
  if (green.is_disk()) return std::nullopt;
  // The reflection across the line through 0 and w preserves G, and G runs
  // 0 -> min -> 0 along the opposite ray, so the saddle lies on that ray.
  const Complex dir = -std::polar(1.0, std::arg(green.pole()));
  const double r = green.inner_radius();
  const auto res = maximize_golden([&](double rho) { return -green(rho * dir); }, r, 1.0,
                                   64, 1e-10);
  Complex z = res.argmax * dir;
  for (int i = 0; i < 20; ++i) {
    const Complex step = green.derivative(z) / green.second_derivative(z);
    z -= step;
    if (std::abs(step) < 1e-15) break;
  }
  if (!(std::abs(green.derivative(z)) < 1e-9) || !green.in_domain(z))
    throw ConvergenceError("critical_point: Newton polish failed");
  return z;
}

namespace {

struct CurveSums {
  double flux = 0.0, density = 0.0, length = 0.0, half_s2 = 0.0;
  double min_gradient = std::numeric_limits<double>::infinity();
};

// Accumulates trapezoid sums for the star-shaped curve c + s(theta) e^{i theta}.
void accumulate(const GreenSeries1D& green, Complex centre, double theta, double s,
                double weight, CurveSums& sums) {
  const Complex e = std::polar(1.0, theta);
  const Complex z = centre + s * e;
  const Complex fp = green.derivative(z);
  const double radial = (fp * e).real();
  const double tangential = (fp * kI * e).real();
  const double ds = -s * tangential / radial;
  const double dsigma = std::hypot(ds, s);
  const double grad = std::abs(fp);
  sums.flux += weight * grad * dsigma;
  sums.density += weight * dsigma / grad;
  sums.length += weight * dsigma;
  sums.half_s2 += weight * 0.5 * s * s;
  sums.min_gradient = std::min(sums.min_gradient, grad);
}

// Distance from `from` along direction e to the first boundary circle.
double exit_distance(const GreenSeries1D& green, Complex from, Complex e) {
  const double proj = (std::conj(from) * e).real();
  const double m2 = std::norm(from);
  double s = -proj + std::sqrt(proj * proj + 1.0 - m2);
  const double r = green.inner_radius();
  if (r > 0.0) {
    const double disc = proj * proj - (m2 - r * r);
    if (proj < 0.0 && disc >= 0.0) s = std::min(s, -proj - std::sqrt(disc));
  }
  return s;
}

const Tolerance kTraceTol{0.0, 1e-15, 400};
constexpr int kCrossingProbes = 24;

// True when f(x) - t has the sign of `sign` at interior probes of (a, b).
template <class F>
bool keeps_sign(const F& f, double t, double a, double b, double sign) {
  for (int k = 1; k < kCrossingProbes; ++k)
    if (!(sign * (f(a + (b - a) * k / kCrossingProbes) - t) > 0.0)) return false;
  return true;
}

}  // namespace

LevelReport level_flux_and_isoperimetric(const GreenSeries1D& green, double t, int rays) {
  if (!(t < 0.0)) throw ValidationError("level_flux_and_isoperimetric: requires t < 0");
  if (rays < 16) throw ValidationError("level_flux_and_isoperimetric: too few rays");

  double t_critical = std::numeric_limits<double>::infinity();
  if (auto zc = critical_point(green)) t_critical = green(*zc);

  LevelReport rep;
  rep.t = t;
  const double weight = 2.0 * kPi / rays;
  const Complex w = green.pole();

  if (t < t_critical) {
    // One curve, star-shaped about the pole.
    CurveSums sums;
    const double s_lo = 0.5 * std::exp(t) * green.boundary_distance();
    for (int i = 0; i < rays; ++i) {
      const double theta = weight * i;
      const Complex e = std::polar(1.0, theta);
      const double s_hi = exit_distance(green, w, e);
      const auto g = [&](double s) { return green(w + s * e) - t; };
      const double s = find_root_monotone(g, s_lo, s_hi, kTraceTol);
      const auto on_ray = [&](double x) { return green(w + x * e); };
      if (!((green.derivative(w + s * e) * e).real() > 0.0) ||
          !keeps_sign(on_ray, t, s, s_hi, 1.0) || !keeps_sign(on_ray, t, s_lo, s, -1.0))
        throw NumericalError(fmt::format("level t = {} is not star-shaped about the pole", t));
      accumulate(green, w, theta, s, weight, sums);
    }
    rep.flux = sums.flux;
    rep.density = sums.density;
    rep.length = sums.length;
    rep.area = sums.half_s2;
    rep.min_gradient = sums.min_gradient;
    rep.components = 1;
  } else {
    // Two curves around the hole, traced along rays from the origin.
    CurveSums inner, outer;
    const double r = green.inner_radius();
    for (int i = 0; i < rays; ++i) {
      const double theta = weight * i;
      const Complex e = std::polar(1.0, theta);
      const auto along = [&](double rho) { return green(rho * e); };
      const auto lowest = maximize_golden([&](double rho) { return -along(rho); }, r, 1.0,
                                          32, 1e-12);
      const double rho_min = lowest.argmax;
      if (!(along(rho_min) < t))
        throw NumericalError(fmt::format("level t = {} does not separate the boundary", t));
      const auto g = [&](double rho) { return along(rho) - t; };
      const double rho_in = find_root_monotone(g, r, rho_min, kTraceTol);
      const double rho_out = find_root_monotone(g, rho_min, 1.0, kTraceTol);
      if (!((green.derivative(rho_in * e) * e).real() < 0.0) ||
          !((green.derivative(rho_out * e) * e).real() > 0.0) ||
          !keeps_sign(along, t, r, rho_in, 1.0) || !keeps_sign(along, t, rho_in, rho_out, -1.0) ||
          !keeps_sign(along, t, rho_out, 1.0, 1.0))
        throw NumericalError(fmt::format("level t = {} is not star-shaped about 0", t));
      accumulate(green, 0.0, theta, rho_in, weight, inner);
      accumulate(green, 0.0, theta, rho_out, weight, outer);
    }
    rep.flux = inner.flux + outer.flux;
    rep.density = inner.density + outer.density;
    rep.length = inner.length + outer.length;
    rep.area = outer.half_s2 - inner.half_s2;
    rep.min_gradient = std::min(inner.min_gradient, outer.min_gradient);
    rep.components = 2;
  }

  if (rep.min_gradient < kMinGradient)
    throw NumericalError(fmt::format(
        "level t = {} passes near the critical point (min |grad G| = {:.3e})", t,
        rep.min_gradient));
  rep.iso_ratio = rep.length * rep.length / (4.0 * kPi * rep.area);
  return rep;
}

double circle_flux(const GreenSeries1D& green, double s, int samples) {
  const double weight = 2.0 * kPi / samples;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Complex e = std::polar(1.0, weight * i);
    sum += (green.derivative(s * e) * e).real() * s * weight;
  }
  return sum;
}

void SublevelCurve::write_csv(std::ostream& out) const {
  out << "t,lambda,stderr,normalized\n";
  for (std::size_t i = 0; i < t.size(); ++i)
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", t[i], lambda[i], std_error[i],
                       normalized[i]);
}

SublevelCurve sublevel_curve(const GreenSeries1D& green, const std::vector<double>& t_grid,
                             const SampleStream& stream, std::size_t count) {
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw ValidationError("sublevel_curve: t grid must be strictly increasing");
  SublevelCurve curve;
  for (double t : t_grid) {
    const auto v = sublevel_volume(green, t, stream, count);
    curve.t.push_back(t);
    curve.lambda.push_back(v.value);
    curve.std_error.push_back(v.std_error);
    curve.normalized.push_back(v.normalized);
    curve.normalized_error.push_back(v.normalized_error);
  }
  return curve;
}

}  // namespace bergsuita
