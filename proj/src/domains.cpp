#include "bergsuita/domains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace bergsuita {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_dimension(const DomainSpec& d, std::span<const Complex> z) {
  if (static_cast<int>(z.size()) != d.dimension())
    throw ValidationError(fmt::format("{}: point has dimension {}, expected {}",
                                      d.name(), z.size(), d.dimension()));
}

double log_gamma(double x) { return std::lgamma(x); }

}  // namespace

DomainSpec::DomainSpec(Variant v) : v_(std::move(v)) {
  std::visit(
      Overloaded{
          [](Ellipsoid& e) {
            if (e.p.empty()) throw ValidationError("ellipsoid: exponent list is empty");
            if (e.radii.empty()) e.radii.assign(e.p.size(), 1.0);
            if (e.radii.size() != e.p.size())
              throw ValidationError("ellipsoid: radii and exponents differ in length");
            for (double p : e.p)
              if (!(p >= 0.5) || !std::isfinite(p))
                throw ValidationError(fmt::format("ellipsoid: exponent {} < 1/2", p));
            for (double r : e.radii)
              if (!(r > 0.0) || !std::isfinite(r))
                throw ValidationError("ellipsoid: radii must be positive");
          },
          [](Annulus& a) {
            if (!(a.r > 0.0 && a.r < 1.0))
              throw ValidationError(
                  fmt::format("annulus: inner radius {} outside (0,1)", a.r));
          },
          [](Ball& b) {
            if (b.n < 1) throw ValidationError("ball: dimension must be >= 1");
          },
          [](Polydisk& p) {
            if (p.n < 1) throw ValidationError("polydisk: dimension must be >= 1");
          },
          [](SymmetrizedBidisk&) {},
      },
      v_);
}

DomainSpec DomainSpec::ellipsoid(std::vector<double> p, std::vector<double> radii) {
  return DomainSpec(Ellipsoid{std::move(p), std::move(radii)});
}
DomainSpec DomainSpec::annulus(double r) { return DomainSpec(Annulus{r}); }
DomainSpec DomainSpec::ball(int n) { return DomainSpec(Ball{n}); }
DomainSpec DomainSpec::polydisk(int n) { return DomainSpec(Polydisk{n}); }
DomainSpec DomainSpec::symmetrized_bidisk() { return DomainSpec(SymmetrizedBidisk{}); }

int DomainSpec::dimension() const {
  return std::visit(
      Overloaded{
          [](const Ellipsoid& e) { return static_cast<int>(e.p.size()); },
          [](const Annulus&) { return 1; },
          [](const Ball& b) { return b.n; },
          [](const Polydisk& p) { return p.n; },
          [](const SymmetrizedBidisk&) { return 2; },
      },
      v_);
}

bool DomainSpec::is_balanced() const {
  return std::holds_alternative<Ellipsoid>(v_) || std::holds_alternative<Ball>(v_) ||
         std::holds_alternative<Polydisk>(v_);
}

bool DomainSpec::is_reinhardt() const {
  return !std::holds_alternative<SymmetrizedBidisk>(v_);
}

Ellipsoid DomainSpec::as_ellipsoid() const {
  if (const auto* e = std::get_if<Ellipsoid>(&v_)) return *e;
  if (const auto* b = std::get_if<Ball>(&v_))
    return {std::vector<double>(b->n, 1.0), std::vector<double>(b->n, 1.0)};
  throw ValidationError(name() + " is not an ellipsoid");
}

std::string DomainSpec::name() const {
  return std::visit(
      Overloaded{
          [](const Ellipsoid& e) {
            std::string s = "ellipsoid(p=";
            for (std::size_t i = 0; i < e.p.size(); ++i)
              s += fmt::format("{}{}", i ? "," : "", e.p[i]);
            return s + ")";
          },
          [](const Annulus& a) { return fmt::format("annulus(r={})", a.r); },
          [](const Ball& b) { return fmt::format("ball(n={})", b.n); },
          [](const Polydisk& p) { return fmt::format("polydisk(n={})", p.n); },
          [](const SymmetrizedBidisk&) { return std::string("symmetrized_bidisk"); },
      },
      v_);
}

void to_json(nlohmann::json& j, const DomainSpec& d) {
  std::visit(Overloaded{
                 [&](const Ellipsoid& e) {
                   j = {{"variant", "ellipsoid"}, {"p", e.p}, {"radii", e.radii}};
                 },
                 [&](const Annulus& a) { j = {{"variant", "annulus"}, {"r", a.r}}; },
                 [&](const Ball& b) { j = {{"variant", "ball"}, {"n", b.n}}; },
                 [&](const Polydisk& p) { j = {{"variant", "polydisk"}, {"n", p.n}}; },
                 [&](const SymmetrizedBidisk&) {
                   j = {{"variant", "symmetrized_bidisk"}};
                 },
             },
             d.v_);
}

void from_json(const nlohmann::json& j, DomainSpec& d) {
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string())
    throw ValidationError("domain spec: expected an object with a \"variant\" string");
  const auto variant = j["variant"].get<std::string>();
  try {
    if (variant == "ellipsoid") {
      auto p = j.at("p").get<std::vector<double>>();
      std::vector<double> radii;
      if (j.contains("radii")) radii = j["radii"].get<std::vector<double>>();
      d = DomainSpec::ellipsoid(std::move(p), std::move(radii));
    } else if (variant == "annulus") {
      d = DomainSpec::annulus(j.at("r").get<double>());
    } else if (variant == "ball") {
      d = DomainSpec::ball(j.at("n").get<int>());
    } else if (variant == "polydisk") {
      d = DomainSpec::polydisk(j.at("n").get<int>());
    } else if (variant == "symmetrized_bidisk") {
      d = DomainSpec::symmetrized_bidisk();
    } else {
      throw ValidationError("domain spec: unknown variant \"" + variant + "\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("domain spec: ") + e.what());
  }
}

bool contains(const DomainSpec& domain, std::span<const Complex> z) {
  check_dimension(domain, z);
  return std::visit(
      Overloaded{
          [&](const Ellipsoid& e) {
            double s = 0.0;
            for (std::size_t j = 0; j < z.size(); ++j)
              s += std::pow(std::abs(z[j]) / e.radii[j], 2.0 * e.p[j]);
            return s < 1.0;
          },
          [&](const Annulus& a) {
            const double m = std::abs(z[0]);
            return m > a.r && m < 1.0;
          },
          [&](const Ball&) {
            double s = 0.0;
            for (auto c : z) s += std::norm(c);
            return s < 1.0;
          },
          [&](const Polydisk&) {
            return std::all_of(z.begin(), z.end(),
                               [](Complex c) { return std::abs(c) < 1.0; });
          },
          [&](const SymmetrizedBidisk&) {
            // Roots of s^2 - z1 s + z2 = 0 are the preimage (s1, s2).
            const Complex disc = std::sqrt(z[0] * z[0] - 4.0 * z[1]);
            const Complex s1 = 0.5 * (z[0] + disc);
            const Complex s2 = 0.5 * (z[0] - disc);
            return std::abs(s1) < 1.0 && std::abs(s2) < 1.0;
          },
      },
      domain.variant());
}

double minkowski_functional(const DomainSpec& domain, std::span<const Complex> z) {
  check_dimension(domain, z);
  if (!domain.is_balanced())
    throw ValidationError("minkowski_functional: " + domain.name() + " is not balanced");
  if (std::all_of(z.begin(), z.end(), [](Complex c) { return c == 0.0; })) return 0.0;

  if (std::holds_alternative<Ball>(domain.variant())) {
    double s = 0.0;
    for (auto c : z) s = std::hypot(s, std::abs(c));
    return s;
  }
  if (std::holds_alternative<Polydisk>(domain.variant())) {
    double s = 0.0;
    for (auto c : z) s = std::max(s, std::abs(c));
    return s;
  }

  const Ellipsoid& e = std::get<Ellipsoid>(domain.variant());
  const std::size_t n = z.size();
  std::vector<double> x(n);
  for (std::size_t j = 0; j < n; ++j) x[j] = std::abs(z[j]) / e.radii[j];
  const double scale = *std::max_element(x.begin(), x.end());
  const double p_min = *std::min_element(e.p.begin(), e.p.end());

  // h = scale * exp(sigma), sigma in [0, log(n) / (2 p_min)]; the ratios
  // x_j / scale make the root independent of |z|.
  const auto g = [&](double sigma) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j)
      if (x[j] > 0.0) s += std::exp(2.0 * e.p[j] * (std::log(x[j] / scale) - sigma));
    return s - 1.0;
  };
  const double hi = std::log(static_cast<double>(n)) / (2.0 * p_min);
  if (hi == 0.0) return scale;
  const double sigma = find_root_monotone(g, 0.0, hi, {0.0, 1e-16, 400});
  return scale * std::exp(sigma);
}

double ellipsoid_volume(std::span<const double> p, std::span<const double> radii) {
  if (!radii.empty() && radii.size() != p.size())
    throw ValidationError("ellipsoid_volume: radii and exponents differ in length");
  for (double pj : p)
    if (!(pj > 0.0) || !std::isfinite(pj))
      throw ValidationError(fmt::format("ellipsoid_volume: exponent {} must be positive", pj));
  std::vector<int> zero(p.size(), 0);
  const double log_pi = std::log(kPi);
  double log_v = 0.0, c_sum = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double c = 1.0 / p[j];
    const double r = radii.empty() ? 1.0 : radii[j];
    log_v += log_pi + log_gamma(c) - std::log(p[j]) + 2.0 * std::log(r);
    c_sum += c;
  }
  // Direct Gamma products are more accurate while they stay representable.
  if (c_sum < 150.0) {
    double v = 1.0;
    for (std::size_t j = 0; j < p.size(); ++j) {
      const double r = radii.empty() ? 1.0 : radii[j];
      v *= kPi * std::tgamma(1.0 / p[j]) / p[j] * r * r;
    }
    return v / std::tgamma(1.0 + c_sum);
  }
  return std::exp(log_v - log_gamma(1.0 + c_sum));
}

double volume(const DomainSpec& domain, std::size_t samples) {
  return std::visit(
      Overloaded{
          [](const Ellipsoid& e) { return ellipsoid_volume(e.p, e.radii); },
          [](const Annulus& a) { return -kPi * std::expm1(2.0 * std::log(a.r)); },
          [](const Ball& b) { return std::pow(kPi, b.n) / std::tgamma(b.n + 1.0); },
          [](const Polydisk& p) { return std::pow(kPi, p.n); },
          [&](const SymmetrizedBidisk&) {
            // Bounding box |Re z1|,|Im z1| < 2 and |Re z2|,|Im z2| < 1.
            const SampleStream stream{4, 0, SampleKind::low_discrepancy};
            const auto pts = sample_unit_cube(stream, samples);
            const DomainSpec g2 = DomainSpec::symmetrized_bidisk();
            std::size_t hits = 0;
            for (std::size_t i = 0; i < samples; ++i) {
              const double* u = &pts[4 * i];
              const Complex z[2] = {{4.0 * u[0] - 2.0, 4.0 * u[1] - 2.0},
                                    {2.0 * u[2] - 1.0, 2.0 * u[3] - 1.0}};
              if (contains(g2, z)) ++hits;
            }
            return 64.0 * static_cast<double>(hits) / static_cast<double>(samples);
          },
      },
      domain.variant());
}

double log_monomial_norm(const DomainSpec& domain, std::span<const int> alpha) {
  if (static_cast<int>(alpha.size()) != domain.dimension())
    throw ValidationError("monomial_norm: multi-index length differs from dimension");
  return std::visit(
      Overloaded{
          [&](const Annulus& a) {
            const int j = alpha[0];
            if (j == -1) return std::log(-2.0 * kPi * std::log(a.r));
            // pi (1 - r^(2j+2)) / (j+1), positive for either sign of j+1.
            const double e = 2.0 * (j + 1.0) * std::log(a.r);
            return std::log(kPi * -std::expm1(e) / (j + 1.0));
          },
          [&](const Polydisk&) {
            double s = 0.0;
            for (int k : alpha) {
              if (k < 0) throw ValidationError("monomial_norm: negative index");
              s += std::log(kPi / (k + 1.0));
            }
            return s;
          },
          [&](const SymmetrizedBidisk&) -> double {
            throw ValidationError("monomial_norm: symmetrized bidisk is not Reinhardt");
          },
          [&](const auto&) {
            const Ellipsoid e = domain.as_ellipsoid();
            double s = 0.0, c_sum = 0.0;
            for (std::size_t j = 0; j < alpha.size(); ++j) {
              if (alpha[j] < 0) throw ValidationError("monomial_norm: negative index");
              const double c = (alpha[j] + 1.0) / e.p[j];
              s += std::log(kPi) + log_gamma(c) - std::log(e.p[j]) +
                   (2.0 * alpha[j] + 2.0) * std::log(e.radii[j]);
              c_sum += c;
            }
            return s - log_gamma(1.0 + c_sum);
          },
      },
      domain.variant());
}

double monomial_norm(const DomainSpec& domain, std::span<const int> alpha) {
  const bool all_zero = std::all_of(alpha.begin(), alpha.end(), [](int k) { return k == 0; });
  // The constant monomial shares the volume routine so that 1/K(0) and the
  // volume agree bit for bit.
  if (all_zero && domain.is_balanced()) {
    if (static_cast<int>(alpha.size()) != domain.dimension())
      throw ValidationError("monomial_norm: multi-index length differs from dimension");
    return volume(domain);
  }
  return std::exp(log_monomial_norm(domain, alpha));
}

void EllipsoidFamilyParams::validate() const {
  if (!(m >= 0.5)) throw ValidationError(fmt::format("family: m = {} < 1/2", m));
  if (n < 2) throw ValidationError(fmt::format("family: n = {} < 2", n));
  if (!(b > 0.0 && b < 1.0))
    throw ValidationError(fmt::format("family: b = {} outside (0,1)", b));
}

double EllipsoidFamilyParams::omega() const {
  const std::vector<double> p(n - 1, m);
  return ellipsoid_volume(p);
}

DomainSpec EllipsoidFamilyParams::domain() const {
  std::vector<double> p(n, m);
  p[0] = 0.5;
  return DomainSpec::ellipsoid(std::move(p));
}

Point EllipsoidFamilyParams::base_point() const {
  Point w(n, 0.0);
  w[0] = b;
  return w;
}

}  // namespace bergsuita
