#include "bergsuita/numerics.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <queue>
#include <random>
#include <thread>

#include <fmt/core.h>

namespace bergsuita {

void Tolerance::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
    throw ValidationError("tolerance: abs_tol and rel_tol must be >= 0");
  if (abs_tol == 0.0 && rel_tol == 0.0)
    throw ValidationError("tolerance: one of abs_tol, rel_tol must be > 0");
  if (max_iter < 1) throw ValidationError("tolerance: max_iter must be >= 1");
}

double find_root_monotone(const RealFunction& f, double lo, double hi,
                          const Tolerance& tol) {
  tol.validate();
  if (lo > hi) std::swap(lo, hi);
  double a = lo, b = hi;
  double fa = f(a), fb = f(b);
  if (std::isnan(fa) || std::isnan(fb))
    throw BracketError("find_root_monotone: f is NaN at a bracket endpoint");
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw BracketError(fmt::format(
        "find_root_monotone: no sign change on [{}, {}] (f = {}, {})", a, b, fa,
        fb));

  // Illinois: after the same endpoint is retained twice its value is halved.
  int retained_side = 0;
  double width_two_steps_ago = b - a;
  for (int iter = 0; iter < tol.max_iter; ++iter) {
    double x = (a * fb - b * fa) / (fb - fa);
    const double mid = 0.5 * (a + b);
    const bool use_bisection =
        !(x > a && x < b) || (iter % 2 == 1 && (b - a) > 0.5 * width_two_steps_ago);
    if (iter % 2 == 1) width_two_steps_ago = b - a;
    if (use_bisection) x = mid;

    const double fx = f(x);
    if (std::isnan(fx)) throw NumericalError("find_root_monotone: f(x) is NaN");
    if (std::abs(fx) <= tol.abs_tol) return x;

    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
      if (retained_side == 1 && !use_bisection) fb *= 0.5;
      retained_side = 1;
    } else {
      b = x;
      fb = fx;
      if (retained_side == -1 && !use_bisection) fa *= 0.5;
      retained_side = -1;
    }

    const double xm = 0.5 * (a + b);
    if (b - a <= tol.rel_tol * std::abs(xm)) return xm;
    if (xm <= a || xm >= b) return std::abs(fa) < std::abs(fb) ? a : b;
  }
  throw ConvergenceError(fmt::format(
      "find_root_monotone: no convergence after {} iterations on [{}, {}]",
      tol.max_iter, a, b));
}

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the 7-point rule on kKronrodNodes[1], [3], [5], [7].
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel gauss_kronrod(const RealFunction& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kKronrodNodes[i];
    const double sum = f(c - dx) + f(c + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {a, b, kronrod * h, std::abs((kronrod - gauss) * h)};
}

}  // namespace

double integrate_1d(const RealFunction& f, double a, double b,
                    const Tolerance& tol, std::span<const double> knots) {
  tol.validate();
  if (a > b) throw ValidationError("integrate_1d: requires a <= b");
  if (a == b) return 0.0;

  std::vector<double> cuts{a};
  for (double k : knots)
    if (k > a && k < b) cuts.push_back(k);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::priority_queue<Panel> panels;
  double total = 0.0, total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Panel p = gauss_kronrod(f, cuts[i], cuts[i + 1]);
    total += p.value;
    total_error += p.error;
    panels.push(p);
  }

  for (int iter = 0;; ++iter) {
    if (total_error <= std::max(tol.abs_tol, tol.rel_tol * std::abs(total)))
      return total;
    if (iter >= tol.max_iter)
      throw ConvergenceError(fmt::format(
          "integrate_1d: error estimate {:.3e} after {} subdivisions on [{}, {}]",
          total_error, tol.max_iter, a, b));
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Panel at machine resolution; its error cannot be reduced further.
      if (panels.empty()) return total;
      worst.error = 0.0;
      panels.push(worst);
      continue;
    }
    const Panel left = gauss_kronrod(f, worst.a, mid);
    const Panel right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }
}

MaximizeResult maximize_golden(const RealFunction& f, double lo, double hi,
                               int coarse_points, double x_tol) {
  if (!(lo < hi)) throw ValidationError("maximize_golden: requires lo < hi");
  coarse_points = std::max(coarse_points, 3);

  std::vector<double> xs(coarse_points), fs(coarse_points);
  for (int i = 0; i < coarse_points; ++i) {
    xs[i] = lo + (hi - lo) * i / (coarse_points - 1);
    fs[i] = f(xs[i]);
  }
  const auto best = static_cast<int>(
      std::max_element(fs.begin(), fs.end()) - fs.begin());
  const auto [fmin, fmax] = std::minmax_element(fs.begin(), fs.end());

  MaximizeResult out;
  if (*fmax - *fmin <= 4.0 * std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(*fmax))) {
    out = {xs[best], fs[best], lo, hi, true};
    return out;
  }

  double a = xs[std::max(best - 1, 0)];
  double b = xs[std::min(best + 1, coarse_points - 1)];
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > x_tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    if (c >= d) break;
  }
  const double x = 0.5 * (a + b);
  double fx = f(x);
  out.argmax = x;
  out.value = fx;
  // Endpoint candidates from the coarse scan can beat an interior bracket.
  if (fs[best] > fx) {
    out.argmax = xs[best];
    out.value = fs[best];
  }
  out.lo = a;
  out.hi = b;
  return out;
}

SeriesSum sum_positive_series(const std::function<double(std::size_t)>& term,
                              std::size_t first, const Tolerance& tol,
                              std::size_t max_terms) {
  SeriesSum s;
  double previous = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t k = first; s.terms < max_terms; ++k) {
    const double t = term(k);
    if (!(t >= 0.0) || std::isinf(t))
      throw NumericalError("sum_positive_series: term is negative or not finite");
    s.value += t;
    ++s.terms;
    const double q = (previous > 0.0) ? t / previous : 1.0;
    previous = t;
    if (t == 0.0 && s.terms > 1) {
      s.tail_bound = 0.0;
      return s;
    }
    if (q < 1.0) {
      s.tail_bound = t * q / (1.0 - q);
      if (s.tail_bound <= std::max(tol.abs_tol, tol.rel_tol * s.value)) return s;
    }
  }
  throw ConvergenceError(
      fmt::format("sum_positive_series: not converged after {} terms", max_terms));
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

SampleStream SampleStream::split(std::uint64_t cell) const {
  return {dimension, mix_seed(seed ^ mix_seed(cell)), kind};
}

namespace {

constexpr std::array<unsigned, 32> kPrimes = {
    2,  3,  5,  7,  11, 13, 17, 19, 23, 29,  31,  37,  41,  43,  47,  53,
    59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double radical_inverse(std::uint64_t index, unsigned base) {
  const double inv_base = 1.0 / base;
  double inv = inv_base, result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * inv;
    index /= base;
    inv *= inv_base;
  }
  return result;
}

double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<double> sample_unit_cube(const SampleStream& stream,
                                     std::size_t count) {
  if (stream.dimension < 1)
    throw ValidationError("sample_unit_cube: dimension must be >= 1");
  if (count < 1) throw ValidationError("sample_unit_cube: count must be >= 1");
  const auto dim = static_cast<std::size_t>(stream.dimension);
  std::vector<double> out(count * dim);

  if (stream.kind == SampleKind::pseudo_random) {
    std::mt19937_64 rng(mix_seed(stream.seed));
    for (double& x : out) x = to_unit(rng());
    return out;
  }

  if (dim > kPrimes.size())
    throw ValidationError(fmt::format(
        "sample_unit_cube: low-discrepancy streams support dimension <= {}",
        kPrimes.size()));
  std::vector<double> shift(dim);
  for (std::size_t j = 0; j < dim; ++j)
    shift[j] = to_unit(mix_seed(stream.seed * 0x100000001B3ULL + j + 1));
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      double x = radical_inverse(i + 1, kPrimes[j]) + shift[j];
      if (x >= 1.0) x -= 1.0;
      out[i * dim + j] = x;
    }
  }
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("BERGSUITA_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n && !failed; i = next++) {
        try {
          body(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bergsuita
