#pragma once

// Diagonal values of the Bergman kernel on the model domains.

#include <string>

#include "bergsuita/domains.hpp"
#include "bergsuita/numerics.hpp"

namespace bergsuita {

enum class KernelMethod { monomial_series, annulus_series, closed_form, deflation, known_constant };

std::string to_string(KernelMethod m);

struct KernelValue {
  double value = 0.0;
  KernelMethod method = KernelMethod::closed_form;
  /// Bound on the truncation error of `value` (0 for closed forms).
  double error_bound = 0.0;
};

/// K(w) = sum_alpha |w^alpha|^2 / ||z^alpha||^2 over a Reinhardt domain,
/// summed in blocks of equal total degree. Throws ValidationError for w
/// outside the domain.
KernelValue kernel_reinhardt(const DomainSpec& domain, std::span<const Complex> w,
                             const Tolerance& tol = {});

/// K(w) on {r < |z| < 1}:
///   (1 / (pi |w|^2)) (1 / (-2 log r) + sum_{j != 0} j |w|^(2j) / (1 - r^(2j))).
KernelValue kernel_annulus(double r, Complex w, const Tolerance& tol = {});

/// K(w) = 1 / (pi (1 - |w|^2)^2) on the unit disk.
KernelValue kernel_disk(Complex w);

/// K at (b, 0) on E(1/2, 1/p) = {|z_1| + |z_2|^(2/p) < 1}:
///   (p+1) / (4 pi^2 b) ((1-b)^(-p-2) - (1+b)^(-p-2)).
KernelValue kernel_ellipsoid_closed(double p, double b);

/// K at (b, 0, ..., 0) on {|z_1| + |z_2|^(2m) + ... + |z_n|^(2m) < 1}:
///   (a-1) / (4 pi omega b) ((1-b)^(-a) - (1+b)^(-a)).
/// Also evaluates the deflation route through E(1/2, m/(n-1)) and throws
/// NumericalError if the two disagree beyond 1e-12 (relative).
KernelValue kernel_deflated(const EllipsoidFamilyParams& params);

/// The deflation route alone: lambda(E') / lambda(Omega) * K_{E'}((b, 0)).
double kernel_deflation_route(const EllipsoidFamilyParams& params);

/// K at 0 on the symmetrized bidisk: 2 / pi^2.
KernelValue kernel_g2_center();

/// (1 - b)^(-a) - (1 + b)^(-a) without cancellation for small b.
double power_difference(double a, double b);

}  // namespace bergsuita
