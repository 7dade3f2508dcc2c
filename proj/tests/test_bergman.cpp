#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergsuita/bergman.hpp"

using namespace bergsuita;
constexpr double kPi = std::numbers::pi;

namespace {

const Tolerance kTight{0.0, 1e-15, 200};

double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

// Orthonormal-basis sum over z^j, j in [-J, J], for the annulus.
double annulus_oracle(double r, double m) {
  double sum = 1.0 / (-2.0 * kPi * std::log(r)) / (m * m);
  for (int j = -2000; j <= 2000; ++j) {
    if (j == -1) continue;
    const double norm = kPi * (1.0 - std::pow(r, 2.0 * j + 2.0)) / (j + 1.0);
    const double term = std::pow(m, 2.0 * j) / norm;
    if (std::isfinite(term)) sum += term;
  }
  return sum;
}

}  // namespace

TEST_CASE("disk and ball kernels") {
  for (double x : {0.0, 0.3, 0.8}) {
    CHECK(kernel_disk(x).value == doctest::Approx(1.0 / (kPi * std::pow(1 - x * x, 2))));
    CHECK(kernel_reinhardt(DomainSpec::ball(1), Point{x}, kTight).value ==
          doctest::Approx(kernel_disk(x).value).epsilon(1e-13));
  }
  // Ball in C^n: n! / (pi^n (1 - |w|^2)^(n+1)).
  for (int n : {2, 3}) {
    Point w(n, 0.0);
    w[0] = Complex(0.2, 0.3);
    w[n - 1] += 0.4;
    double x = 0.0;
    for (auto c : w) x += std::norm(c);
    const double oracle = std::tgamma(n + 1.0) / (std::pow(kPi, n) * std::pow(1.0 - x, n + 1));
    CHECK(rel(kernel_reinhardt(DomainSpec::ball(n), w, kTight).value, oracle) < 1e-12);
  }
}

TEST_CASE("polydisk kernel is a product of disk kernels") {
  const Point w{0.5, Complex(0.0, -0.3)};
  const double oracle = kernel_disk(w[0]).value * kernel_disk(w[1]).value;
  CHECK(rel(kernel_reinhardt(DomainSpec::polydisk(2), w, kTight).value, oracle) < 1e-12);
}

TEST_CASE("kernel at the centre is the reciprocal volume") {
  for (const DomainSpec& d : {DomainSpec::ball(3), DomainSpec::ellipsoid({0.5, 4.0}),
                              DomainSpec::polydisk(2)}) {
    const Point origin(d.dimension(), 0.0);
    CHECK(kernel_reinhardt(d, origin).value == 1.0 / volume(d));
  }
}

TEST_CASE("ellipsoid E(m,1) on the axis: series against the summed closed form") {
  for (double m : {0.5, 2.0, 7.0})
    for (double b : {0.2, 0.7, 0.95}) {
      const double x = b * b;
      const double oracle =
          ((1.0 + x) / std::pow(1.0 - x, 3) + m / std::pow(1.0 - x, 2)) / (kPi * kPi * m);
      const Point w{b, 0.0};
      CHECK(rel(kernel_reinhardt(DomainSpec::ellipsoid({m, 1.0}), w, kTight).value, oracle) <
            1e-11);
    }
}

TEST_CASE("series kernel matches the closed form on E(1/2, 1/p)") {
  for (double p : {1.0, 2.0})
    for (double b : {0.3, 0.6}) {
      const Point w{b, 0.0};
      const double series =
          kernel_reinhardt(DomainSpec::ellipsoid({0.5, 1.0 / p}), w, kTight).value;
      CHECK(rel(series, kernel_ellipsoid_closed(p, b).value) < 1e-8);
    }
}

TEST_CASE("family kernel: closed form, deflation route and series agree") {
  for (double m : {0.5, 1.0, 2.0})
    for (int n : {2, 3, 4})
      for (double b : {0.1, 0.5, 0.9}) {
        const EllipsoidFamilyParams params{m, n, b};
        const double closed = kernel_deflated(params).value;
        CHECK(rel(kernel_deflation_route(params), closed) < 1e-12);
        if (b <= 0.5) {
          const double series =
              kernel_reinhardt(params.domain(), params.base_point(), kTight).value;
          CHECK(rel(series, closed) < 1e-10);
        }
      }
}

TEST_CASE("power_difference is accurate for small b") {
  for (double a : {2.5, 7.0}) {
    CHECK(rel(power_difference(a, 0.4), std::pow(0.6, -a) - std::pow(1.4, -a)) < 1e-14);
    const double b = 1e-9;
    CHECK(rel(power_difference(a, b), 2.0 * a * b) < 1e-15);
  }
}

TEST_CASE("kernel validation errors") {
  CHECK_THROWS_AS(kernel_reinhardt(DomainSpec::annulus(0.2), Point{0.5}), ValidationError);
  CHECK_THROWS_AS(kernel_reinhardt(DomainSpec::ball(2), Point{0.9, 0.9}), ValidationError);
  CHECK_THROWS_AS(kernel_annulus(1.5, 0.5), ValidationError);
  CHECK_THROWS_AS(kernel_annulus(0.2, 0.1), ValidationError);
  CHECK_THROWS_AS(kernel_ellipsoid_closed(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(kernel_ellipsoid_closed(0.0, 0.5), ValidationError);
  CHECK_THROWS_AS(kernel_disk(1.0), ValidationError);
}

TEST_CASE("annulus kernel against a direct orthonormal sum") {
  for (double r : {0.1, 0.4})
    for (double m : {0.5 * (1.0 + r), 0.8, std::sqrt(r)}) {
      const auto k = kernel_annulus(r, std::polar(m, 1.3), kTight);
      CHECK(rel(k.value, annulus_oracle(r, m)) < 1e-12);
      CHECK(k.method == KernelMethod::annulus_series);
    }
}

TEST_CASE("annulus kernel is invariant under z -> r/z") {
  const double r = 0.3;
  for (Complex w : {Complex(0.4, 0.1), Complex(-0.2, 0.6)}) {
    const Complex v = r / w;
    const double jac = std::norm(r / (w * w));
    CHECK(rel(kernel_annulus(r, v, kTight).value * jac, kernel_annulus(r, w, kTight).value) <
          1e-12);
  }
}

TEST_CASE("annulus kernel for tiny r: disk kernel plus the logarithmic term") {
  const double r = 1e-6;
  const Complex w = 0.5;
  const double diff = kernel_annulus(r, w, kTight).value - kernel_disk(w).value;
  const double log_term = 1.0 / (-2.0 * std::log(r)) / (kPi * std::norm(w));
  CHECK(std::abs(diff - log_term) < 1e-8 * kernel_disk(w).value);
  // The log term keeps the difference far above r^2.
  CHECK(diff / kernel_disk(w).value > 0.05);
}

TEST_CASE("kernel scaling covariance") {
  const double c = 2.5;
  const Point w{Complex(0.1, 0.2), 0.3};
  const Point cw{c * w[0], c * w[1]};
  const double k0 = kernel_reinhardt(DomainSpec::ellipsoid({1.0, 3.0}), w, kTight).value;
  const double k1 =
      kernel_reinhardt(DomainSpec::ellipsoid({1.0, 3.0}, {c, c}), cw, kTight).value;
  CHECK(rel(k1 * std::pow(c, 4), k0) < 1e-12);
}

TEST_CASE("symmetrized bidisk kernel at the origin") {
  const auto k = kernel_g2_center();
  CHECK(k.value == 2.0 / (kPi * kPi));
  CHECK(to_string(k.method) == "constant");
}
