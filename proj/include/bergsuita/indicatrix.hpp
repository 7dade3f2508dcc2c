#pragma once

// Azukawa and Kobayashi indicatrices. Balanced domains are their own
// indicatrix at the centre; the symmetrized bidisk and the convex ellipsoids
// with p_1 = 1/2 have explicit radial profiles; general two-dimensional
// ellipsoids are handled through the boundary vectors of the extremal discs
// through the axis point (b, 0).

#include <optional>
#include <ostream>
#include <vector>

#include "bergsuita/domains.hpp"

namespace bergsuita {

enum class ProfileKind { balanced_identity, radial_profile, parametric_arcs };

/// Which coordinate set A the extremal disc vanishes on: A = {1..n} or {2..n}.
enum class Branch { one_in_A, one_not_in_A };

struct ArcPoint {
  double u = 0.0;    // |alpha_1|
  double rho = 0.0;  // |X_1|
  double S = 0.0;    // |X_2|^(2 p_2) + ... + |X_n|^(2 p_n)
};

struct Arc {
  Branch branch = Branch::one_in_A;
  std::vector<ArcPoint> points;  // ordered by u
};

/// Balanced Reinhardt description of an indicatrix in C^n:
///   { X : sum_{j>=2} |X_j|^(2 p_j) < gamma(|X_1|) }.
struct IndicatrixProfile {
  ProfileKind kind = ProfileKind::balanced_identity;
  int dimension = 0;

  // balanced_identity
  std::optional<DomainSpec> domain;

  // radial_profile: gamma on [0, r_max], piecewise smooth with `knots`.
  std::function<double(double)> gamma;
  double r_max = 0.0;
  std::vector<double> knots;
  std::vector<double> slice_exponents;

  // parametric_arcs (n = 2): the slice exponent is slice_exponents[0].
  std::vector<Arc> arcs;

  double volume() const;
  /// Columns r, gamma on `points` equispaced radii (radial profiles only).
  void write_csv(std::ostream& out, int points = 201) const;
};

IndicatrixProfile azukawa_balanced(const DomainSpec& domain);

/// I^A of the symmetrized bidisk at 0: |X_1| + 2 |X_2| < 2.
IndicatrixProfile azukawa_g2_center();

/// Kobayashi indicatrix of {|z_1| + |z_2|^(2m) + ... + |z_n|^(2m) < 1} at
/// (b, 0, ..., 0): a parabola up to r = 2b(1-b), then the line 1 - b^2 - r.
IndicatrixProfile kobayashi_profile_p1half(double m, int n, double b);

/// Closed-form volume of the Kobayashi indicatrix of the family at (b, 0, ..., 0).
double indicatrix_volume_closed(const EllipsoidFamilyParams& params);

struct GeodesicParams {
  double p1 = 0.5;
  double b = 0.5;
  Branch branch = Branch::one_in_A;
  double u = 1.0;  // |alpha_1|
};

/// (|X_1|, sum_{j>=2} |X_j|^(2 p_j)) for the extremal disc with |alpha_1| = u.
/// Admissible u: [b, 1] on the branch 1 in A, [0, 1] otherwise.
ArcPoint geodesic_boundary_point(const GeodesicParams& g);

/// An extremal disc of E(p) through (b, 0, ..., 0), with alpha_j = 0 for j >= 2.
struct GeodesicDisc {
  std::vector<double> p;
  std::vector<Complex> a;
  std::vector<Complex> alpha;
  std::vector<bool> in_A;

  Complex alpha0() const;
  Point operator()(Complex zeta) const;
  /// phi'(0) from the closed formulas.
  Point derivative_at_zero() const;
};

/// Builds the disc with the given alpha_1 (|alpha_1| admissible for the
/// branch). |a_j|^(2 p_j) = weights[j-2] * S with the weights summing to 1,
/// arg a_j = phases[j-2].
GeodesicDisc axis_geodesic(const std::vector<double>& p, double b, Branch branch,
                           Complex alpha1, const std::vector<double>& weights,
                           const std::vector<double>& phases);

/// Both boundary arcs of I^K_{E(p1,p2)}((b, 0)), adaptively sampled so that
/// consecutive points differ by at most `resolution` in rho (relative to
/// 1 - b^2) and in S.
IndicatrixProfile kobayashi_profile_arcs(double p1, double p2, double b,
                                         double resolution = 2e-5);

struct EnvelopeVolume {
  double volume = 0.0;
  int grid = 0;
  double rho_max = 0.0;
};

/// Volume of I^K_{E(p1,p2)}((b, 0)) from the upper envelope of the arcs on a
/// rho grid starting at `grid` points, doubled until the volume changes by
/// less than 1e-5 (relative). Throws NumericalError on a coverage gap.
EnvelopeVolume indicatrix_envelope_volume(double p1, double p2, double b, int grid = 2048);

double indicatrix_volume_numeric(double p1, double p2, double b, int grid = 2048);

}  // namespace bergsuita
