#include <doctest.h>

#include <atomic>
#include <cmath>
#include <numbers>
#include <set>
#include <vector>

#include "bergsuita/numerics.hpp"

using namespace bergsuita;

TEST_CASE("find_root_monotone on increasing and decreasing functions") {
  const double up = find_root_monotone([](double x) { return x * x * x - 2.0; }, 0.0, 2.0);
  CHECK(up == doctest::Approx(std::cbrt(2.0)).epsilon(1e-12));
  const double down = find_root_monotone([](double x) { return std::exp(-x) - 0.25; }, 0.0, 5.0);
  CHECK(down == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("find_root_monotone reports a missing sign change") {
  CHECK_THROWS_AS(find_root_monotone([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                  BracketError);
}

TEST_CASE("find_root_monotone accepts a root at an endpoint") {
  CHECK(find_root_monotone([](double x) { return x - 1.0; }, 1.0, 3.0) == 1.0);
}

TEST_CASE("Tolerance validation") {
  CHECK_THROWS_AS((Tolerance{-1.0, 1e-10, 10}.validate()), ValidationError);
  CHECK_THROWS_AS((Tolerance{0.0, 0.0, 10}.validate()), ValidationError);
  CHECK_THROWS_AS((Tolerance{1e-12, 1e-10, 0}.validate()), ValidationError);
  CHECK_NOTHROW(Tolerance{}.validate());
}

TEST_CASE("integrate_1d on smooth, endpoint-singular and kinked integrands") {
  const Tolerance tol{1e-14, 1e-13, 2000};
  CHECK(integrate_1d([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, tol) ==
        doctest::Approx(2.0).epsilon(1e-13));
  CHECK(integrate_1d([](double x) { return std::sqrt(x); }, 0.0, 1.0, tol) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  const std::vector<double> knots{0.3};
  CHECK(integrate_1d([](double x) { return std::abs(x - 0.3); }, 0.0, 1.0, tol, knots) ==
        doctest::Approx(0.5 * (0.09 + 0.49)).epsilon(1e-14));
}

TEST_CASE("integrate_1d is additive over subintervals") {
  const auto f = [](double x) { return std::exp(-x * x) * std::cos(3.0 * x); };
  const Tolerance tol{1e-15, 1e-14, 2000};
  const double whole = integrate_1d(f, -1.0, 2.0, tol);
  const double parts = integrate_1d(f, -1.0, 0.4, tol) + integrate_1d(f, 0.4, 2.0, tol);
  CHECK(whole == doctest::Approx(parts).epsilon(1e-13));
}

TEST_CASE("maximize_golden finds interior and global maxima") {
  const auto res = maximize_golden([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK(res.argmax == doctest::Approx(0.3).epsilon(1e-8));
  CHECK(res.lo <= res.argmax);
  CHECK(res.argmax <= res.hi);

  // A narrow global peak next to a broad local one.
  const auto bimodal = [](double x) {
    return 0.5 * std::exp(-50.0 * (x - 0.25) * (x - 0.25)) +
           std::exp(-2000.0 * (x - 0.8) * (x - 0.8));
  };
  CHECK(maximize_golden(bimodal, 0.0, 1.0).argmax == doctest::Approx(0.8).epsilon(1e-6));
}

TEST_CASE("maximize_golden flags a flat objective") {
  CHECK(maximize_golden([](double) { return 1.0; }, 0.0, 1.0).flat);
}

TEST_CASE("sum_positive_series: geometric and p-series tails") {
  const Tolerance tol{0.0, 1e-14, 200};
  const auto geo = sum_positive_series([](std::size_t k) { return std::ldexp(1.0, -int(k)); }, 1,
                                       tol);
  CHECK(geo.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(geo.tail_bound >= 1.0 - geo.value);

  const auto mixed = sum_positive_series(
      [](std::size_t k) { return k * std::pow(0.5, static_cast<double>(k)); }, 1, tol);
  CHECK(mixed.value == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("sample_unit_cube is deterministic and seed-dependent") {
  const SampleStream s{3, 7, SampleKind::low_discrepancy};
  const auto a = sample_unit_cube(s, 1000);
  const auto b = sample_unit_cube(s, 1000);
  CHECK(a == b);
  CHECK(a.size() == 3000);
  CHECK(sample_unit_cube({3, 8, SampleKind::low_discrepancy}, 1000) != a);
  CHECK(sample_unit_cube(s.split(1), 1000) != a);
  for (double x : a) {
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("sample_unit_cube marginals are uniform") {
  for (auto kind : {SampleKind::low_discrepancy, SampleKind::pseudo_random}) {
    const auto pts = sample_unit_cube({2, 3, kind}, 100000);
    double m0 = 0.0, m1 = 0.0, cross = 0.0;
    for (std::size_t i = 0; i < 100000; ++i) {
      m0 += pts[2 * i];
      m1 += pts[2 * i + 1];
      cross += pts[2 * i] * pts[2 * i + 1];
    }
    CHECK(m0 / 1e5 == doctest::Approx(0.5).epsilon(5e-3));
    CHECK(m1 / 1e5 == doctest::Approx(0.5).epsilon(5e-3));
    CHECK(cross / 1e5 == doctest::Approx(0.25).epsilon(1e-2));
  }
}

TEST_CASE("sample_unit_cube rejects unsupported dimensions") {
  CHECK_THROWS_AS(sample_unit_cube({0, 0, SampleKind::low_discrepancy}, 10), ValidationError);
  CHECK_THROWS_AS(sample_unit_cube({33, 0, SampleKind::low_discrepancy}, 10), ValidationError);
}

TEST_CASE("mix_seed is a bijection on small inputs") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(mix_seed(i));
  CHECK(seen.size() == 1000);
  CHECK(mix_seed(42) == mix_seed(42));
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<std::atomic<int>> hits(257);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK(worker_count() >= 1);
}
