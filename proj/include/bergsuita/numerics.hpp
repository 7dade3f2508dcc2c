#pragma once

// Shared numerical kernels: bracketing root finder, adaptive Gauss-Kronrod
// quadrature, golden-section maximization, tail-controlled series sums and
// deterministic samplers on the unit cube.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergsuita {

/// Raised on invalid input (bad domain spec, point outside a domain, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base class for numerical failures: non-convergence, unresolved estimates.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BracketError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_iter = 200;

  /// Throws ValidationError unless one tolerance is positive and max_iter >= 1.
  void validate() const;
};

using RealFunction = std::function<double(double)>;

/// Root of a continuous monotone function on [lo, hi].
///
/// Illinois-modified regula falsi with a bisection fallback whenever the
/// bracket fails to halve over two steps. Stops when |f(x)| <= abs_tol, the
/// bracket width is <= rel_tol*|x|, or the bracket cannot shrink further in
/// floating point.
double find_root_monotone(const RealFunction& f, double lo, double hi,
                          const Tolerance& tol = {});

/// Adaptive 15-point Gauss-Kronrod quadrature of f over [a, b].
///
/// `knots` are interior break points (kinks of a piecewise integrand); the
/// initial panels are split there. Panels are refined globally by largest
/// error estimate; tol.max_iter bounds the number of subdivisions.
double integrate_1d(const RealFunction& f, double a, double b,
                    const Tolerance& tol = {},
                    std::span<const double> knots = {});

struct MaximizeResult {
  double argmax = 0.0;
  double value = 0.0;
  // Final bracket around the maximizer.
  double lo = 0.0;
  double hi = 0.0;
  // Set when the objective varied by less than the tolerance over the
  // final bracket's neighbourhood, i.e. the maximizer is only known as an
  // interval.
  bool flat = false;
};

/// Maximize a smooth f on [lo, hi]: coarse scan with `coarse_points`
/// samples, then golden-section search on the cell around the best sample.
MaximizeResult maximize_golden(const RealFunction& f, double lo, double hi,
                               int coarse_points = 64, double x_tol = 1e-9);

struct SeriesSum {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms = 0;
};

/// Sum of non-negative terms term(k), k = first, first+1, ..., stopping when
/// the geometric tail estimate term(k)*q/(1-q) (q the ratio of consecutive
/// terms) falls below max(abs_tol, rel_tol*partial). Throws
/// ConvergenceError after max_terms terms.
SeriesSum sum_positive_series(const std::function<double(std::size_t)>& term,
                              std::size_t first, const Tolerance& tol,
                              std::size_t max_terms = 10'000'000);

enum class SampleKind { pseudo_random, low_discrepancy };

/// Identifies a reproducible stream of points in [0,1]^dimension.
///
/// Low-discrepancy streams are Halton sequences with a Cranley-Patterson
/// rotation derived from the seed; pseudo-random streams use mt19937_64.
struct SampleStream {
  int dimension = 1;
  std::uint64_t seed = 0;
  SampleKind kind = SampleKind::low_discrepancy;

  /// Independent stream for grid cell / replicate `cell`.
  SampleStream split(std::uint64_t cell) const;
};

/// `count` points, row-major (count x dimension).
std::vector<double> sample_unit_cube(const SampleStream& stream,
                                     std::size_t count);

/// splitmix64 finalizer, used for seed derivation.
std::uint64_t mix_seed(std::uint64_t x);

/// Worker count from BERGSUITA_THREADS, else hardware concurrency (>= 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace bergsuita
