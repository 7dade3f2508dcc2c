#pragma once

// The invariant F(w) = (K(w) * lambda(I(w)))^(1/n), the inequalities relating
// the Bergman kernel to Green-function sublevel volumes and to logarithmic
// capacity, maximization of F along axis points, and the n = 1 sublevel
// experiments.

#include <span>
#include <string>
#include <vector>

#include "bergsuita/bergman.hpp"
#include "bergsuita/domains.hpp"
#include "bergsuita/green1d.hpp"
#include "bergsuita/numerics.hpp"
#include "bergsuita/report.hpp"

namespace bergsuita {

/// Upper bound class for F: C-convex (16), convex (4), convex and symmetric
/// about w (16 / pi^2).
enum class ConvexityClass { c_convex, convex, symmetric, none };

std::string to_string(ConvexityClass c);
/// The constant C with F <= C; +inf for `none`.
double bound_constant(ConvexityClass c);

struct SuitaRatio {
  KernelValue kernel;
  double indicatrix_volume = 0.0;
  int n = 1;
  double F = 0.0;
  ConvexityClass classification = ConvexityClass::none;

  double bound() const { return bound_constant(classification); }
  /// 1 - tol <= F <= bound + tol.
  bool within_bounds(double tol) const;
};

/// K * lambda(I^K) for the family at (b, 0, ..., 0):
///   1 + (1-b)^a ((1+b)^a - (1-b)^a - 2ab) / (2ab (1+b)^a).
/// Throws NumericalError if it disagrees with kernel_deflated times
/// indicatrix_volume_closed beyond 1e-12 (relative).
double product_closed_form(const EllipsoidFamilyParams& params);

SuitaRatio suita_F_family(const EllipsoidFamilyParams& params);
/// F at (b, 0) on E(m, 1) = {|z_1|^(2m) + |z_2|^2 < 1} through the numeric
/// geodesic pipeline and the monomial-series kernel.
SuitaRatio suita_F_pfamily(double m, double b);
SuitaRatio suita_F_g2();
SuitaRatio suita_F_balanced(const DomainSpec& domain);

enum class SuitaMethod { automatic, closed_form, numeric };

/// Dispatches on (domain, w): balanced domains at 0, the symmetrized bidisk at
/// 0, the p_1 = 1/2 family on the axis (closed form, or the numeric pipeline
/// for n = 2), and two-dimensional unit ellipsoids at (b, 0) (numeric).
/// Throws ValidationError for unsupported combinations.
SuitaRatio suita_F(const DomainSpec& domain, std::span<const Complex> w,
                   SuitaMethod method = SuitaMethod::automatic);

MaximizeResult maximize_F_family(double m, int n, double x_tol = 1e-10);
MaximizeResult maximize_F_pfamily(double m, double x_tol = 1e-7);

struct LowerBoundCheck {
  double kernel = 0.0;
  double normalized_volume = 0.0;
  /// K(w) - 1 / (e^(-2nt) lambda({G < t})).
  double margin = 0.0;
  double sigma = 0.0;
  bool exact = false;
  bool holds() const { return margin >= -3.0 * sigma; }
};

/// Balanced domains at the origin are exact; the disk at w != 0 and the
/// annulus use sampled sublevel volumes.
LowerBoundCheck check_lower_bound_est1(const DomainSpec& domain, Complex w, double t,
                                       const SampleStream& stream, std::size_t count);

struct ReverseSuitaCheck {
  double r = 0.0;
  double kernel = 0.0;
  double capacity = 0.0;
  double ratio = 0.0;  // K / c^2 at sqrt(r)
  double bound = 0.0;  // -2 log r / pi^3
  bool holds() const { return ratio >= bound; }
  /// c^2 <= pi K.
  bool suita_holds() const;
};

ReverseSuitaCheck check_reverse_suita(double r);

/// e^(-2t) lambda({G < t}) on the t grid for the disk (Ball(1)) or an annulus
/// with pole w: monotonicity verdict (3 sigma), limit versus pi / c^2 (2%),
/// and convexity of log lambda as evidence only.
ExperimentReport monotonicity_experiment(const DomainSpec& domain, Complex w,
                                         const std::vector<double>& t_grid,
                                         const SampleStream& stream, std::size_t count);

enum class FigureFamily { ell1, pfamily };

struct FigureScanRequest {
  FigureFamily family = FigureFamily::ell1;
  std::vector<double> m_values;  // ell1: a single m; pfamily: one curve per m
  std::vector<int> n_values;     // ell1 only
  int grid = 200;                // interior points b = i / (grid + 1)
};

FigureTable figure_scan_table(const FigureScanRequest& req);
/// Verdicts computed from the table alone, so a re-read CSV reproduces them.
std::vector<Verdict> figure_verdicts(const FigureTable& table);
ExperimentReport figure_scan(const FigureScanRequest& req, FigureTable* table_out = nullptr);

}  // namespace bergsuita
