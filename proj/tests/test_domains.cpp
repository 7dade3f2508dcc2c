#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bergsuita/domains.hpp"

using namespace bergsuita;
constexpr double kPi = std::numbers::pi;

namespace {

// Composite Simpson rule, independent of the library quadrature.
template <class F>
double simpson(F f, double a, double b, int n = 200000) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace

TEST_CASE("DomainSpec validation") {
  CHECK_THROWS_AS(DomainSpec::ellipsoid({0.4, 1.0}), ValidationError);
  CHECK_THROWS_AS(DomainSpec::ellipsoid({1.0, 1.0}, {1.0}), ValidationError);
  CHECK_THROWS_AS(DomainSpec::ellipsoid({1.0}, {-1.0}), ValidationError);
  CHECK_THROWS_AS(DomainSpec::ellipsoid({}), ValidationError);
  CHECK_THROWS_AS(DomainSpec::annulus(1.5), ValidationError);
  CHECK_THROWS_AS(DomainSpec::annulus(0.0), ValidationError);
  CHECK_THROWS_AS(DomainSpec::ball(0), ValidationError);
  CHECK(DomainSpec::symmetrized_bidisk().dimension() == 2);
  CHECK(DomainSpec::annulus(0.3).dimension() == 1);
  CHECK(DomainSpec().dimension() == 1);
}

TEST_CASE("contains on each variant") {
  const Point in2{0.3, Complex(0.0, 0.4)}, out2{0.8, 0.7};
  CHECK(contains(DomainSpec::ball(2), in2));
  CHECK_FALSE(contains(DomainSpec::ball(2), out2));
  CHECK(contains(DomainSpec::polydisk(2), out2));
  CHECK(contains(DomainSpec::ellipsoid({0.5, 1.0}), Point{0.5, 0.5}));
  CHECK_FALSE(contains(DomainSpec::ellipsoid({0.5, 1.0}), Point{0.7, 0.6}));
  CHECK(contains(DomainSpec::annulus(0.2), Point{0.5}));
  CHECK_FALSE(contains(DomainSpec::annulus(0.2), Point{0.1}));
  // Image of (0.2, 0.3) and of (0.9, 1.1) under (s1 + s2, s1 s2).
  CHECK(contains(DomainSpec::symmetrized_bidisk(), Point{0.5, 0.06}));
  CHECK_FALSE(contains(DomainSpec::symmetrized_bidisk(), Point{2.0, 0.99}));
  CHECK_THROWS_AS(contains(DomainSpec::ball(2), Point{0.1}), ValidationError);
}

TEST_CASE("minkowski functional: exact cases and homogeneity") {
  const Point z{0.3, Complex(0.1, 0.2)};
  CHECK(minkowski_functional(DomainSpec::ball(2), z) ==
        doctest::Approx(std::sqrt(0.09 + 0.05)).epsilon(1e-14));
  CHECK(minkowski_functional(DomainSpec::polydisk(2), z) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(minkowski_functional(DomainSpec::ball(2), Point{0.0, 0.0}) == 0.0);

  const DomainSpec e = DomainSpec::ellipsoid({0.5, 3.0, 1.5}, {1.0, 2.0, 0.5});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int i = 0; i < 50; ++i) {
    const Point p{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
    const double h = minkowski_functional(e, p);
    const Complex lambda = std::polar(0.37, u(rng));
    Point q = p;
    for (auto& c : q) c *= lambda;
    CHECK(minkowski_functional(e, q) == doctest::Approx(0.37 * h).epsilon(1e-12));
    CHECK(contains(e, p) == (h < 1.0));
    Point boundary = p;
    for (auto& c : boundary) c /= h;
    double s = 0.0;
    const auto& ell = std::get<Ellipsoid>(e.variant());
    for (int j = 0; j < 3; ++j)
      s += std::pow(std::abs(boundary[j]) / ell.radii[j], 2.0 * ell.p[j]);
    CHECK(s == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("minkowski functional rejects non-balanced domains") {
  CHECK_THROWS_AS(minkowski_functional(DomainSpec::annulus(0.2), Point{0.5}), ValidationError);
}

TEST_CASE("volumes with classical closed forms") {
  CHECK(volume(DomainSpec::ball(1)) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(volume(DomainSpec::ball(3)) == doctest::Approx(std::pow(kPi, 3) / 6.0).epsilon(1e-14));
  CHECK(volume(DomainSpec::polydisk(2)) == doctest::Approx(kPi * kPi).epsilon(1e-14));
  CHECK(volume(DomainSpec::annulus(0.3)) == doctest::Approx(kPi * 0.91).epsilon(1e-15));
  for (double p : {1.0, 2.0, 5.0}) {
    const std::vector<double> exps{0.5, 1.0 / p};
    CHECK(ellipsoid_volume(exps) ==
          doctest::Approx(2.0 * kPi * kPi / ((p + 1.0) * (p + 2.0))).epsilon(1e-13));
  }
}

TEST_CASE("ellipsoid volume matches a fibre integral") {
  for (auto [p1, p2] : {std::pair{0.5, 2.0}, {1.5, 0.7}, {3.0, 3.0}}) {
    // Fibre over z1 is a disk of radius (1 - |z1|^(2 p1))^(1/(2 p2)).
    const double oracle = simpson(
        [&](double r) { return 2.0 * kPi * r * kPi * std::pow(1.0 - std::pow(r, 2.0 * p1), 1.0 / p2); },
        0.0, 1.0);
    CHECK(volume(DomainSpec::ellipsoid({p1, p2})) == doctest::Approx(oracle).epsilon(1e-7));
  }
  const std::vector<double> p{1.0, 2.0}, radii{2.0, 0.7};
  CHECK(ellipsoid_volume(p, radii) ==
        doctest::Approx(4.0 * 0.49 * ellipsoid_volume(p)).epsilon(1e-14));
}

TEST_CASE("symmetrized bidisk volume by sampling") {
  CHECK(volume(DomainSpec::symmetrized_bidisk(), 400000) ==
        doctest::Approx(kPi * kPi / 2.0).epsilon(1e-2));
}

TEST_CASE("monomial norms") {
  const DomainSpec disk = DomainSpec::ball(1);
  for (int k : {0, 1, 5}) {
    const std::vector<int> a{k};
    CHECK(monomial_norm(disk, a) == doctest::Approx(kPi / (k + 1)).epsilon(1e-14));
  }
  const double r = 0.3;
  const DomainSpec ann = DomainSpec::annulus(r);
  for (int j : {-3, 0, 2}) {
    const std::vector<int> a{j};
    CHECK(monomial_norm(ann, a) ==
          doctest::Approx(kPi * (1.0 - std::pow(r, 2 * j + 2)) / (j + 1)).epsilon(1e-13));
  }
  const std::vector<int> log_slot{-1};
  CHECK(monomial_norm(ann, log_slot) == doctest::Approx(-2.0 * kPi * std::log(r)).epsilon(1e-14));

  // Polydisk norms factor.
  const std::vector<int> a{2, 3};
  CHECK(monomial_norm(DomainSpec::polydisk(2), a) ==
        doctest::Approx(kPi / 3.0 * kPi / 4.0).epsilon(1e-14));
  CHECK(std::exp(log_monomial_norm(DomainSpec::polydisk(2), a)) ==
        doctest::Approx(monomial_norm(DomainSpec::polydisk(2), a)).epsilon(1e-13));
}

TEST_CASE("monomial norm on an ellipsoid matches a fibre integral") {
  const DomainSpec e = DomainSpec::ellipsoid({0.5, 2.0});
  const std::vector<int> a{3, 1};
  // |z1|^6 |z2|^2 integrated: inner disk of radius s gives pi s^4 / 2.
  const double oracle = simpson(
      [](double r) {
        const double s2 = std::pow(1.0 - r, 0.5);  // s^2 with s^4 = 1 - r
        return 2.0 * kPi * r * std::pow(r, 6) * kPi * s2 * s2 / 2.0;
      },
      0.0, 1.0);
  CHECK(monomial_norm(e, a) == doctest::Approx(oracle).epsilon(1e-8));
}

TEST_CASE("domain JSON round trip") {
  for (const DomainSpec& d :
       {DomainSpec::ellipsoid({0.5, 2.0}, {1.0, 3.0}), DomainSpec::annulus(0.25),
        DomainSpec::ball(3), DomainSpec::polydisk(2), DomainSpec::symmetrized_bidisk()}) {
    const nlohmann::json j = d;
    const DomainSpec back = j.get<DomainSpec>();
    CHECK(nlohmann::json(back) == j);
    CHECK(back.name() == d.name());
  }
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"variant":"torus"})").get<DomainSpec>(),
                  ValidationError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"({"variant":"annulus"})").get<DomainSpec>(),
                  ValidationError);
  CHECK_THROWS_AS(nlohmann::json::parse(R"([1,2])").get<DomainSpec>(), ValidationError);
}

TEST_CASE("ellipsoid family parameters") {
  const EllipsoidFamilyParams f{1.0, 2, 0.4};
  CHECK(f.a() == 3.0);
  CHECK(f.omega() == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(f.domain().dimension() == 2);
  CHECK(f.base_point()[0] == Complex(0.4, 0.0));
  CHECK_THROWS_AS((EllipsoidFamilyParams{0.3, 2, 0.5}.validate()), ValidationError);
  CHECK_THROWS_AS((EllipsoidFamilyParams{1.0, 1, 0.5}.validate()), ValidationError);
  CHECK_THROWS_AS((EllipsoidFamilyParams{1.0, 2, 1.0}.validate()), ValidationError);
}
