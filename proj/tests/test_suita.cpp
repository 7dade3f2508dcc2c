#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "bergsuita/indicatrix.hpp"
#include "bergsuita/suita.hpp"

using namespace bergsuita;
constexpr double kPi = std::numbers::pi;

namespace {

double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

const SampleStream kStream{2, 0, SampleKind::low_discrepancy};

}  // namespace

TEST_CASE("bound constants") {
  CHECK(bound_constant(ConvexityClass::c_convex) == 16.0);
  CHECK(bound_constant(ConvexityClass::convex) == 4.0);
  CHECK(bound_constant(ConvexityClass::symmetric) == doctest::Approx(16.0 / (kPi * kPi)));
  CHECK(std::isinf(bound_constant(ConvexityClass::none)));
  CHECK(to_string(ConvexityClass::c_convex) == "C-convex");
}

TEST_CASE("product formula equals kernel times indicatrix volume on the 27-point grid") {
  for (double b : {0.1, 0.5, 0.9})
    for (double m : {0.5, 1.0, 2.0})
      for (int n : {2, 3, 4}) {
        const EllipsoidFamilyParams p{m, n, b};
        const double factors = kernel_deflated(p).value * indicatrix_volume_closed(p);
        CHECK(rel(product_closed_form(p), factors) < 1e-12);
      }
}

TEST_CASE("product formula limits at both ends of the axis") {
  for (double m : {0.5, 2.0})
    for (int n : {2, 5}) {
      CHECK(std::abs(product_closed_form({m, n, 1.0 - 1e-6}) - 1.0) < 1e-4);
      CHECK(std::abs(product_closed_form({m, n, 1e-6}) - 1.0) < 1e-10);
      // The small-b series and the direct form meet at b = 0.1.
      const double below = product_closed_form({m, n, 0.1 - 1e-12});
      const double above = product_closed_form({m, n, 0.1 + 1e-12});
      CHECK(std::abs(below - above) < 1e-12);
    }
}

TEST_CASE("maximum along the m = 1/2, n = 3 curve") {
  const auto res = maximize_F_family(0.5, 3);
  CHECK(std::abs(res.argmax - 0.163501) <= 5e-5);
  // Independent 30-digit evaluation of the same maximum.
  CHECK(res.value == doctest::Approx(1.0041178661).epsilon(1e-9));
}

TEST_CASE("per-dimension maxima for m = 1/2 stay below 1.0042") {
  const double expected[] = {1.0040571, 1.0041179, 1.0036986, 1.0032733, 1.0029100};
  for (int n = 2; n <= 6; ++n) {
    const auto res = maximize_F_family(0.5, n);
    CHECK(res.value == doctest::Approx(expected[n - 2]).epsilon(2e-7));
    CHECK(res.value <= 1.0042);
  }
}

TEST_CASE("p-family at m = 1/2 coincides with the ell1 family at m = 1, n = 2") {
  for (double b : {0.05, 0.3, 0.6, 0.9}) {
    const double p = suita_F_pfamily(0.5, b).F;
    const double e = suita_F_family({1.0, 2, b}).F;
    CHECK(std::abs(p - e) < 1e-4);
  }
}

TEST_CASE("p-family maxima") {
  const std::pair<double, double> expected[] = {
      {0.5, 1.0023393}, {2.0, 1.0018531}, {8.0, 1.0080816}, {32.0, 1.0099678}};
  for (auto [m, F] : expected) {
    const auto res = maximize_F_pfamily(m);
    CAPTURE(m);
    CHECK(res.value == doctest::Approx(F).epsilon(2e-6));
  }
  const auto big = maximize_F_pfamily(128.0);
  CHECK(std::abs(big.value - 1.010182) < 2e-3);
}

TEST_CASE("symmetrized bidisk and balanced centres") {
  const auto g2 = suita_F_g2();
  CHECK(std::abs(g2.F - 2.0 / std::sqrt(3.0)) < 1e-10);
  CHECK(g2.classification == ConvexityClass::c_convex);
  CHECK(g2.within_bounds(1e-12));

  for (const DomainSpec& d : {DomainSpec::ball(2), DomainSpec::polydisk(3),
                              DomainSpec::ellipsoid({0.5, 3.0}, {2.0, 1.0})}) {
    const auto s = suita_F_balanced(d);
    CHECK(std::abs(s.F - 1.0) < 1e-12);
    CHECK(s.F <= s.bound() + 1e-12);
  }
}

TEST_CASE("F at the centre is invariant under scaling") {
  const std::vector<double> p{1.0, 2.5};
  const double f0 = suita_F_balanced(DomainSpec::ellipsoid(p, {1.0, 0.6})).F;
  const double f1 = suita_F_balanced(DomainSpec::ellipsoid(p, {3.0, 1.8})).F;
  CHECK(rel(f1, f0) < 1e-12);
}

TEST_CASE("suita_F dispatch") {
  const DomainSpec fam = DomainSpec::ellipsoid({0.5, 2.0, 2.0});
  const Point w{0.3, 0.0, 0.0};
  const auto closed = suita_F(fam, w);
  CHECK(rel(closed.F, std::pow(product_closed_form({2.0, 3, 0.3}), 1.0 / 3.0)) < 1e-14);

  const DomainSpec two = DomainSpec::ellipsoid({0.5, 2.0});
  const Point w2{0.4, 0.0};
  const auto a = suita_F(two, w2, SuitaMethod::closed_form);
  const auto b = suita_F(two, w2, SuitaMethod::numeric);
  CHECK(std::abs(a.F - b.F) < 1e-5);

  CHECK(suita_F(DomainSpec::symmetrized_bidisk(), Point{0.0, 0.0}).F ==
        doctest::Approx(2.0 / std::sqrt(3.0)));
  CHECK_THROWS_AS(suita_F(DomainSpec::annulus(0.3), Point{0.5}), ValidationError);
  CHECK_THROWS_AS(suita_F(two, Point{0.4, 0.1}), ValidationError);
  CHECK_THROWS_AS(suita_F(two, Point{0.99, 0.5}), ValidationError);
}

TEST_CASE("F stays within [1, 4] across the convex families") {
  for (double m : {0.5, 1.0, 3.0})
    for (int n : {2, 3, 6})
      for (int i = 1; i < 40; ++i) {
        const auto s = suita_F_family({m, n, i / 40.0});
        CHECK(s.within_bounds(1e-10));
      }
  for (double m : {0.5, 4.0, 64.0})
    for (double b : {0.15, 0.5, 0.85}) CHECK(suita_F_pfamily(m, b).within_bounds(1e-10));
}

TEST_CASE("lower bound via sublevel volumes") {
  for (double t : {-3.0, -2.0, -1.0}) {
    const auto c = check_lower_bound_est1(DomainSpec::ball(1), 0.0, t, kStream, 0);
    CHECK(c.exact);
    CHECK(c.margin == 0.0);
  }
  const auto ball = check_lower_bound_est1(DomainSpec::ball(3), 0.0, -1.0, kStream, 0);
  CHECK(ball.margin == 0.0);

  for (double t : {-2.0, -0.5}) {
    const auto disk = check_lower_bound_est1(DomainSpec::ball(1), 0.5, t, kStream, 100000);
    CHECK(disk.holds());
    CHECK(disk.margin > 0.0);
    const auto ann = check_lower_bound_est1(DomainSpec::annulus(0.2), std::sqrt(0.2), t,
                                            kStream, 100000);
    CHECK(ann.holds());
    CHECK(ann.margin > 0.0);
  }
  CHECK_THROWS_AS(check_lower_bound_est1(DomainSpec::symmetrized_bidisk(), 0.0, -1.0, kStream,
                                         1000),
                  ValidationError);
}

TEST_CASE("reverse Suita inequality and its failure as r -> 0") {
  double previous = 0.0;
  for (double r : {0.5, 0.1, 0.01, 1e-4}) {
    const auto c = check_reverse_suita(r);
    CHECK(c.holds());
    CHECK(c.suita_holds());
    CHECK(c.capacity <= covering_capacity_bound(r));
    CHECK(c.ratio > previous);
    previous = c.ratio;
  }
  CHECK_THROWS_AS(check_reverse_suita(1.5), ValidationError);
}

TEST_CASE("monotonicity experiment: disk centre is exact") {
  const auto rep = monotonicity_experiment(DomainSpec::ball(1), 0.0, {-3.0, -1.0, -0.1},
                                           kStream, 0);
  CHECK(rep.passed());
  for (const auto& s : rep.samples) CHECK(s.value == doctest::Approx(kPi).epsilon(1e-15));
}

TEST_CASE("monotonicity experiment: sampled disk and annulus") {
  const std::vector<double> grid{-5.0, -3.0, -1.5, -0.5};
  const auto disk = monotonicity_experiment(DomainSpec::ball(1), Complex(0.3, 0.3), grid,
                                            kStream, 100000);
  CHECK(disk.passed());
  const auto ann = monotonicity_experiment(DomainSpec::annulus(0.2), std::sqrt(0.2), grid,
                                           kStream, 100000);
  CHECK(ann.passed());
  REQUIRE(ann.verdicts.size() == 3);
  CHECK_FALSE(ann.verdicts[2].asserted);

  const nlohmann::json j = ann;
  const auto back = j.get<ExperimentReport>();
  CHECK(back.samples.size() == ann.samples.size());
  CHECK(back.passed() == ann.passed());
  CHECK(j.at("metadata").at("sample_count") == 100000);

  CHECK_THROWS_AS(monotonicity_experiment(DomainSpec::ball(1), 0.0, {-1.0, -2.0}, kStream, 10),
                  ValidationError);
  CHECK_THROWS_AS(monotonicity_experiment(DomainSpec::ball(2), 0.0, {-2.0, -1.0}, kStream, 10),
                  ValidationError);
}

TEST_CASE("figure scan: ell1 family at m = 1/2") {
  FigureScanRequest req;
  req.m_values = {0.5};
  req.n_values = {2, 3, 4, 5, 6};
  FigureTable table;
  const auto rep = figure_scan(req, &table);
  CHECK(table.rows.size() == 1000);
  CHECK(rep.passed());
  for (const auto& row : table.rows) {
    CHECK(row.F >= 1.0 - 1e-10);
    CHECK(row.F <= 1.0042);
  }
  CHECK(table.rows.front().curve == "ell1 m=0.5 n=2");
  CHECK(table.rows.back().curve == "ell1 m=0.5 n=6");

  std::ostringstream first, second;
  table.write_csv(first);
  figure_scan_table(req).write_csv(second);
  CHECK(first.str() == second.str());

  std::istringstream in(first.str());
  const FigureTable back = FigureTable::read_csv(in);
  const auto again = figure_verdicts(back);
  REQUIRE(again.size() == rep.verdicts.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].passed == rep.verdicts[i].passed);
    CHECK(again[i].detail == rep.verdicts[i].detail);
  }
}

TEST_CASE("figure scan: p family curves and request validation") {
  FigureScanRequest req;
  req.family = FigureFamily::pfamily;
  req.m_values = {0.5, 8.0};
  req.grid = 20;
  const auto table = figure_scan_table(req);
  CHECK(table.rows.size() == 40);
  CHECK(table.rows[20].curve == "p m=8");

  FigureScanRequest bad;
  bad.grid = 0;
  bad.m_values = {0.5};
  bad.n_values = {2};
  CHECK_THROWS_AS(figure_scan_table(bad), ValidationError);
  bad.grid = 10;
  bad.m_values = {};
  CHECK_THROWS_AS(figure_scan_table(bad), ValidationError);

  std::istringstream junk("b,F\n0.1,1\n");
  CHECK_THROWS_AS(FigureTable::read_csv(junk), ValidationError);
}
