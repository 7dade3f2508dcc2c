#pragma once

// Model-domain catalogue: complex ellipsoids, annuli, balls, polydisks and the
// symmetrized bidisk. Membership, Minkowski functionals of the balanced
// members, Lebesgue volumes and monomial L2 norms.

#include <complex>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bergsuita/numerics.hpp"

namespace bergsuita {

using Complex = std::complex<double>;
using Point = std::vector<Complex>;

/// {z : sum_j |z_j / R_j|^(2 p_j) < 1}
struct Ellipsoid {
  std::vector<double> p;
  std::vector<double> radii;
};

/// {z in C : r < |z| < 1}
struct Annulus {
  double r = 0.5;
};

struct Ball {
  int n = 1;
};

struct Polydisk {
  int n = 1;
};

/// Image of the bidisk under (s1, s2) -> (s1 + s2, s1 s2).
struct SymmetrizedBidisk {};

class DomainSpec {
 public:
  using Variant = std::variant<Ellipsoid, Annulus, Ball, Polydisk, SymmetrizedBidisk>;

  /// The unit disk.
  DomainSpec() : DomainSpec(Ball{1}) {}
  /// Validates the invariants; throws ValidationError.
  explicit DomainSpec(Variant v);

  /// Ellipsoid with unit radii when `radii` is empty.
  static DomainSpec ellipsoid(std::vector<double> p, std::vector<double> radii = {});
  static DomainSpec annulus(double r);
  static DomainSpec ball(int n);
  static DomainSpec polydisk(int n);
  static DomainSpec symmetrized_bidisk();

  const Variant& variant() const { return v_; }
  int dimension() const;

  /// Balanced about the origin (ellipsoids, balls, polydisks).
  bool is_balanced() const;
  /// Reinhardt domains with a monomial orthogonal basis.
  bool is_reinhardt() const;

  /// Ellipsoid view of balls (p = 1) and ellipsoids; throws otherwise.
  Ellipsoid as_ellipsoid() const;

  std::string name() const;

  friend void to_json(nlohmann::json& j, const DomainSpec& d);
  friend void from_json(const nlohmann::json& j, DomainSpec& d);

 private:
  Variant v_;
};

bool contains(const DomainSpec& domain, std::span<const Complex> z);

/// h(z) > 0 with z / h(z) on the boundary; h(0) = 0.
double minkowski_functional(const DomainSpec& domain, std::span<const Complex> z);

/// Lebesgue volume. The symmetrized bidisk is estimated by low-discrepancy
/// hit counting with `samples` points (other domains are exact).
double volume(const DomainSpec& domain, std::size_t samples = 1'000'000);

/// Gamma-product volume of {z in C^k : sum_j |z_j / R_j|^(2 p_j) < 1}.
double ellipsoid_volume(std::span<const double> p, std::span<const double> radii = {});

/// || z^alpha ||^2 over the domain. For the annulus alpha has one signed entry.
double monomial_norm(const DomainSpec& domain, std::span<const int> alpha);

/// log || z^alpha ||^2; finite where monomial_norm would over/underflow.
double log_monomial_norm(const DomainSpec& domain, std::span<const int> alpha);

/// The ellipsoid family {|z_1| + |z_2|^(2m) + ... + |z_n|^(2m) < 1} at the
/// axis point (b, 0, ..., 0).
struct EllipsoidFamilyParams {
  double m = 0.5;
  int n = 2;
  double b = 0.5;

  /// Throws ValidationError unless m >= 1/2, n >= 2, 0 < b < 1.
  void validate() const;
  double a() const { return (n - 1) / m + 2.0; }
  /// Volume of {|z_1|^(2m) + ... + |z_{n-1}|^(2m) < 1} in C^(n-1).
  double omega() const;
  DomainSpec domain() const;
  Point base_point() const;
};

}  // namespace bergsuita
