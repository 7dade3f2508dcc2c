#pragma once

// Planar Green functions with a logarithmic pole: the closed form on the unit
// disk and a separated-variables series on the annulus r < |z| < 1. Robin
// constants, sublevel-set volumes, level-curve flux and isoperimetric
// quantities, and the universal covering map of the annulus.

#include <complex>
#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "bergsuita/domains.hpp"
#include "bergsuita/numerics.hpp"

namespace bergsuita {

/// G(z) = log|z - w| + H(z) with H harmonic and G = 0 on the boundary.
///
/// On the annulus
///   H(z) = c0 + c_log log|z| + sum_k Re( outer_k z^k + inner_k (r/z)^k ),
/// where the complex coefficients carry the cosine/sine pairs of each
/// frequency. The disk uses H(z) = -log|1 - conj(w) z| and has no series.
class GreenSeries1D {
 public:
  static GreenSeries1D disk(Complex w);

  bool is_disk() const { return r_ == 0.0; }
  /// Inner radius (0 for the disk).
  double inner_radius() const { return r_; }
  Complex pole() const { return w_; }
  std::size_t truncation() const { return outer_.size(); }
  double constant_term() const { return c0_; }
  double log_coefficient() const { return c_log_; }
  const std::vector<Complex>& outer_coefficients() const { return outer_; }
  const std::vector<Complex>& inner_coefficients() const { return inner_; }

  /// Computable bound on sup |G| over the boundary from the dropped tail.
  double residual_bound() const { return residual_bound_; }

  bool in_domain(Complex z) const;
  /// G(z); -inf at the pole. Points outside the closed domain throw.
  double operator()(Complex z) const;
  double harmonic_part(Complex z) const;
  /// F'(z) for the holomorphic F with G = Re F locally; |grad G| = |F'(z)|.
  Complex derivative(Complex z) const;
  Complex second_derivative(Complex z) const;

  /// Robin constant lim_{z->w} (G(z) - log|z - w|) = H(w).
  double robin() const { return harmonic_part(w_); }

  /// Distance from the pole to the boundary.
  double boundary_distance() const;

  friend GreenSeries1D solve_green_annulus(double r, Complex w, const Tolerance& tol);

 private:
  GreenSeries1D() = default;

  double r_ = 0.0;
  Complex w_{0.0, 0.0};
  double c0_ = 0.0;
  double c_log_ = 0.0;
  std::vector<Complex> outer_;
  std::vector<Complex> inner_;
  double residual_bound_ = 0.0;
};

/// Green function of {r < |z| < 1} with pole w, r < |w| < 1, r <= 0.999.
/// The truncation is the smallest N whose geometric tail bound is below
/// tol.abs_tol.
GreenSeries1D solve_green_annulus(double r, Complex w, const Tolerance& tol = {});

/// Logarithmic capacity c(w) = exp(Robin constant).
double robin_capacity(const GreenSeries1D& green);

/// The covering map p(zeta) = exp((log r / (pi i)) Log(i (1 + zeta) / (1 - zeta)))
/// of the annulus by the unit disk, with p(0) = sqrt(r).
class AnnulusCovering {
 public:
  explicit AnnulusCovering(double r);
  Complex operator()(Complex zeta) const;
  Complex derivative(Complex zeta) const;
  /// 1 / |p'(0)| = pi / (-2 sqrt(r) log r), an upper bound for c(sqrt r).
  double capacity_bound() const;

 private:
  double r_;
};

double covering_capacity_bound(double r);

struct VolumeEstimate {
  double value = 0.0;
  double std_error = 0.0;
  /// e^(-2 n t) * value, with its standard error.
  double normalized = 0.0;
  double normalized_error = 0.0;
  bool exact = false;
  /// False when std_error > value (too few samples to resolve the set).
  bool resolved = true;
};

/// lambda({G < t}) by randomized low-discrepancy hit counting in a box around
/// the pole. The count is split into `replicates` Cranley-Patterson shifted
/// streams whose spread gives the standard error.
VolumeEstimate sublevel_volume(const GreenSeries1D& green, double t,
                               const SampleStream& stream, std::size_t count,
                               int replicates = 16);

/// Balanced domain with pole at the origin: G = log h and the sublevel set is
/// e^t * Omega, so the value is exact.
VolumeEstimate sublevel_volume(const DomainSpec& balanced, double t);

struct LevelReport {
  double t = 0.0;
  /// Integral of |grad G| over {G = t}; 2 pi for every regular level.
  double flux = 0.0;
  /// Integral of 1/|grad G| over {G = t}, i.e. d/dt lambda({G < t}).
  double density = 0.0;
  /// sigma({G = t})^2 / (4 pi lambda({G < t})).
  double iso_ratio = 0.0;
  double length = 0.0;
  /// lambda({G < t}) from the traced curve(s).
  double area = 0.0;
  double min_gradient = 0.0;
  /// 1: a single curve around the pole; 2: two curves around the hole.
  int components = 0;
};

/// Traces {G = t} by root finding along `rays` equiangular rays and integrates
/// with the periodic trapezoid rule. Throws NumericalError when the level is
/// too close to the critical value (min |grad G| < 1e-4) or the level is not
/// star-shaped about the tracing centre.
LevelReport level_flux_and_isoperimetric(const GreenSeries1D& green, double t,
                                         int rays = 4096);

/// Critical point of the annulus Green function (none for the disk).
std::optional<Complex> critical_point(const GreenSeries1D& green);

/// Signed outward flux integral of dG/d(rho) over the circle |z| = s.
double circle_flux(const GreenSeries1D& green, double s, int samples = 4096);

struct SublevelCurve {
  std::vector<double> t;
  std::vector<double> lambda;
  std::vector<double> std_error;
  std::vector<double> normalized;
  std::vector<double> normalized_error;

  /// Columns t, lambda, stderr, normalized.
  void write_csv(std::ostream& out) const;
};

SublevelCurve sublevel_curve(const GreenSeries1D& green, const std::vector<double>& t_grid,
                             const SampleStream& stream, std::size_t count);

}  // namespace bergsuita
