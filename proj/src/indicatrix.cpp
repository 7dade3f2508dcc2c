#include "bergsuita/indicatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace bergsuita {

namespace {

constexpr double kPi = std::numbers::pi;

const Tolerance kProfileQuadrature{1e-15, 1e-13, 4000};

double upper_envelope_volume(const std::vector<Arc>& arcs, double p2, int grid,
                             double rho_max);

}  // namespace

double IndicatrixProfile::volume() const {
  switch (kind) {
    case ProfileKind::balanced_identity:
      return bergsuita::volume(*domain);
    case ProfileKind::radial_profile: {
      double exponent = 0.0;
      for (double p : slice_exponents) exponent += 1.0 / p;
      const double omega = ellipsoid_volume(slice_exponents);
      const auto integrand = [&](double r) {
        return r * std::pow(std::max(gamma(r), 0.0), exponent);
      };
      return 2.0 * kPi * omega * integrate_1d(integrand, 0.0, r_max, kProfileQuadrature, knots);
    }
    case ProfileKind::parametric_arcs:
      return upper_envelope_volume(arcs, slice_exponents.at(0), 2048, r_max);
  }
  return 0.0;
}

void IndicatrixProfile::write_csv(std::ostream& out, int points) const {
  if (kind != ProfileKind::radial_profile)
    throw ValidationError("write_csv: only radial profiles have a gamma column");
  out << "r,gamma\n";
  for (int i = 0; i < points; ++i) {
    const double r = r_max * i / (points - 1);
    out << fmt::format("{:.17g},{:.17g}\n", r, gamma(r));
  }
}

IndicatrixProfile azukawa_balanced(const DomainSpec& domain) {
  if (!domain.is_balanced())
    throw ValidationError("azukawa_balanced: " + domain.name() + " is not balanced");
  IndicatrixProfile prof;
  prof.kind = ProfileKind::balanced_identity;
  prof.dimension = domain.dimension();
  prof.domain = domain;
  return prof;
}

IndicatrixProfile azukawa_g2_center() {
  IndicatrixProfile prof;
  prof.kind = ProfileKind::radial_profile;
  prof.dimension = 2;
  // |X_2| < (2 - |X_1|) / 2, i.e. |X_2|^(2 * 1/2) < 1 - |X_1| / 2.
  prof.gamma = [](double r) { return 1.0 - 0.5 * r; };
  prof.r_max = 2.0;
  prof.slice_exponents = {0.5};
  return prof;
}

IndicatrixProfile kobayashi_profile_p1half(double m, int n, double b) {
  EllipsoidFamilyParams{m, n, b}.validate();
  IndicatrixProfile prof;
  prof.kind = ProfileKind::radial_profile;
  prof.dimension = n;
  const double knot = 2.0 * b * (1.0 - b);
  prof.gamma = [b, knot](double r) {
    if (r <= knot) return 1.0 - b - r * r / (4.0 * b * (1.0 - b));
    return 1.0 - b * b - r;
  };
  prof.r_max = 1.0 - b * b;
  prof.knots = {knot};
  prof.slice_exponents.assign(n - 1, m);
  return prof;
}

double indicatrix_volume_closed(const EllipsoidFamilyParams& params) {
  params.validate();
  const double a = params.a(), b = params.b;
  const double ma = std::pow(1.0 - b, a);
  return 2.0 * kPi * params.omega() * ma * (ma + 2.0 * a * b) / (a * (a - 1.0));
}

ArcPoint geodesic_boundary_point(const GeodesicParams& g) {
  const double p = g.p1, b = g.b, u = g.u;
  if (!(p >= 0.5)) throw ValidationError("geodesic: p1 < 1/2");
  if (!(b > 0.0 && b < 1.0)) throw ValidationError("geodesic: b outside (0,1)");
  ArcPoint pt;
  pt.u = u;
  if (g.branch == Branch::one_in_A) {
    if (!(u >= b && u <= 1.0))
      throw ValidationError(fmt::format("geodesic: |alpha_1| = {} outside [b, 1]", u));
    // |a_1|^(2 p) = (b/u)^(2 p); written via b/u to avoid u^(2-2p) overflow.
    const double t = std::pow(b / u, 2.0 * p);
    pt.rho = (b / u) * std::abs(1.0 + (1.0 / p - 1.0) * u * u - t * u * u / p);
    pt.S = (1.0 - t) * (1.0 - t * u * u);
  } else {
    if (!(u >= 0.0 && u <= 1.0))
      throw ValidationError(fmt::format("geodesic: |alpha_1| = {} outside [0, 1]", u));
    const double t = std::pow(b, 2.0 * p);
    pt.rho = u * b * (1.0 - t) / p;
    pt.S = (1.0 - t) * (1.0 - t * u * u);
  }
  pt.S = std::max(pt.S, 0.0);
  return pt;
}

Complex GeodesicDisc::alpha0() const {
  Complex s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j)
    s += std::pow(std::abs(a[j]), 2.0 * p[j]) * alpha[j];
  return s;
}

Point GeodesicDisc::operator()(Complex zeta) const {
  const Complex a0c = std::conj(alpha0());
  Point z(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    const Complex ajc = std::conj(alpha[j]);
    const Complex ratio = (1.0 - ajc * zeta) / (1.0 - a0c * zeta);
    const Complex power = std::pow(ratio, 1.0 / p[j]);
    z[j] = in_A[j] ? a[j] * (zeta - alpha[j]) / (1.0 - ajc * zeta) * power : a[j] * power;
  }
  return z;
}

Point GeodesicDisc::derivative_at_zero() const {
  const Complex a0c = std::conj(alpha0());
  Point x(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (in_A[j])
      x[j] = a[j] * (1.0 + (1.0 / p[j] - 1.0) * std::norm(alpha[j]) - alpha[j] * a0c / p[j]);
    else
      x[j] = a[j] * (a0c - std::conj(alpha[j])) / p[j];
  }
  return x;
}

GeodesicDisc axis_geodesic(const std::vector<double>& p, double b, Branch branch,
                           Complex alpha1, const std::vector<double>& weights,
                           const std::vector<double>& phases) {
  const std::size_t n = p.size();
  if (n < 2 || weights.size() != n - 1 || phases.size() != n - 1)
    throw ValidationError("axis_geodesic: need n >= 2 and n-1 weights and phases");
  const ArcPoint bp = geodesic_boundary_point({p[0], b, branch, std::abs(alpha1)});

  GeodesicDisc d;
  d.p = p;
  d.a.assign(n, 0.0);
  d.alpha.assign(n, 0.0);
  d.in_A.assign(n, true);
  d.alpha[0] = alpha1;
  if (branch == Branch::one_in_A) {
    d.a[0] = -b / alpha1;
  } else {
    d.a[0] = b;
    d.in_A[0] = false;
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double modulus = std::pow(weights[j - 1] * bp.S, 1.0 / (2.0 * p[j]));
    d.a[j] = std::polar(modulus, phases[j - 1]);
  }
  return d;
}

namespace {

void refine_arc(const GeodesicParams& base, double u0, double u1, const ArcPoint& p0,
                const ArcPoint& p1, double d_rho, double d_s, int depth,
                std::vector<ArcPoint>& out) {
  if (depth < 60 && (std::abs(p1.rho - p0.rho) > d_rho || std::abs(p1.S - p0.S) > d_s)) {
    const double um = 0.5 * (u0 + u1);
    GeodesicParams g = base;
    g.u = um;
    const ArcPoint pm = geodesic_boundary_point(g);
    refine_arc(base, u0, um, p0, pm, d_rho, d_s, depth + 1, out);
    refine_arc(base, um, u1, pm, p1, d_rho, d_s, depth + 1, out);
    return;
  }
  out.push_back(p1);
}

Arc sample_arc(double p1, double b, Branch branch, double resolution) {
  const double u_lo = branch == Branch::one_in_A ? b : 0.0;
  const double d_rho = resolution * (1.0 - b * b);
  GeodesicParams g{p1, b, branch, u_lo};
  Arc arc;
  arc.branch = branch;
  constexpr int kInitial = 256;
  ArcPoint prev = geodesic_boundary_point(g);
  arc.points.push_back(prev);
  for (int i = 1; i <= kInitial; ++i) {
    g.u = u_lo + (1.0 - u_lo) * i / kInitial;
    const ArcPoint next = geodesic_boundary_point(g);
    refine_arc(g, prev.u, next.u, prev, next, d_rho, resolution, 0, arc.points);
    prev = next;
  }
  return arc;
}

struct Segment {
  std::vector<double> rho, S;  // rho increasing
};

std::vector<Segment> monotone_segments(const Arc& arc) {
  std::vector<Segment> out;
  const auto& pts = arc.points;
  std::size_t start = 0;
  while (start + 1 < pts.size()) {
    std::size_t end = start + 1;
    const bool increasing = pts[end].rho >= pts[start].rho;
    while (end + 1 < pts.size() && ((pts[end + 1].rho >= pts[end].rho) == increasing)) ++end;
    Segment seg;
    for (std::size_t i = start; i <= end; ++i) {
      seg.rho.push_back(pts[i].rho);
      seg.S.push_back(pts[i].S);
    }
    if (!increasing) {
      std::reverse(seg.rho.begin(), seg.rho.end());
      std::reverse(seg.S.begin(), seg.S.end());
    }
    out.push_back(std::move(seg));
    start = end;
  }
  return out;
}

double upper_envelope_volume(const std::vector<Arc>& arcs, double p2, int grid,
                             double rho_max) {
  std::vector<Segment> segments;
  for (const Arc& arc : arcs)
    for (auto& s : monotone_segments(arc)) segments.push_back(std::move(s));

  const double h = rho_max / grid;
  std::vector<double> env(grid + 1, -1.0);
  for (const Segment& seg : segments) {
    const double lo = seg.rho.front(), hi = seg.rho.back();
    auto i = static_cast<long>(std::ceil(lo / h - 1e-9));
    std::size_t k = 0;
    for (; i <= grid && i * h <= hi * (1.0 + 1e-12); ++i) {
      if (i < 0) continue;
      const double x = std::min(i * h, hi);
      while (k + 2 < seg.rho.size() && seg.rho[k + 1] < x) ++k;
      const double x0 = seg.rho[k], x1 = seg.rho[k + 1];
      const double frac = x1 > x0 ? std::clamp((x - x0) / (x1 - x0), 0.0, 1.0) : 0.0;
      const double s = seg.S[k] + frac * (seg.S[k + 1] - seg.S[k]);
      env[i] = std::max(env[i], s);
    }
  }
  double sum = 0.0;
  for (int i = 0; i <= grid; ++i) {
    if (env[i] < 0.0)
      throw NumericalError(fmt::format(
          "indicatrix envelope: no arc covers rho = {:.6g} (grid {})", i * h, grid));
    const double f = i * h * std::pow(env[i], 1.0 / p2);
    sum += (i == 0 || i == grid) ? 0.5 * f : f;
  }
  return 2.0 * kPi * kPi * sum * h;
}

}  // namespace

IndicatrixProfile kobayashi_profile_arcs(double p1, double p2, double b, double resolution) {
  if (!(p1 >= 0.5 && p2 >= 0.5)) throw ValidationError("indicatrix arcs: exponents < 1/2");
  if (!(b > 0.0 && b < 1.0)) throw ValidationError("indicatrix arcs: b outside (0,1)");
  IndicatrixProfile prof;
  prof.kind = ProfileKind::parametric_arcs;
  prof.dimension = 2;
  prof.slice_exponents = {p2};
  prof.arcs = {sample_arc(p1, b, Branch::one_not_in_A, resolution),
               sample_arc(p1, b, Branch::one_in_A, resolution)};
  double rho_max = 0.0;
  for (const Arc& arc : prof.arcs)
    for (const ArcPoint& pt : arc.points) rho_max = std::max(rho_max, pt.rho);
  prof.r_max = rho_max;
  return prof;
}

EnvelopeVolume indicatrix_envelope_volume(double p1, double p2, double b, int grid) {
  if (grid < 16) throw ValidationError("indicatrix envelope: grid too small");
  const IndicatrixProfile prof = kobayashi_profile_arcs(p1, p2, b);
  EnvelopeVolume out;
  out.rho_max = prof.r_max;
  double previous = upper_envelope_volume(prof.arcs, p2, grid, prof.r_max);
  constexpr int kMaxGrid = 1 << 22;
  while (grid < kMaxGrid) {
    grid *= 2;
    const double current = upper_envelope_volume(prof.arcs, p2, grid, prof.r_max);
    const bool done = std::abs(current - previous) < 1e-5 * std::abs(current);
    previous = current;
    if (done) break;
  }
  out.volume = previous;
  out.grid = grid;
  return out;
}

double indicatrix_volume_numeric(double p1, double p2, double b, int grid) {
  return indicatrix_envelope_volume(p1, p2, b, grid).volume;
}

}  // namespace bergsuita
