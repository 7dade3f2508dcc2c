#include "bergsuita/bergman.hpp"

#include <cmath>
#include <numbers>

#include <fmt/core.h>

namespace bergsuita {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxDegree = 1'000'000;

// Calls visit(alpha) for every alpha with entries on `active` summing to
// `degree` and zeros elsewhere.
template <class Visit>
void for_each_composition(std::vector<int>& alpha, const std::vector<std::size_t>& active,
                          std::size_t slot, int remaining, Visit& visit) {
  if (slot + 1 == active.size()) {
    alpha[active[slot]] = remaining;
    visit(alpha);
    return;
  }
  for (int k = remaining; k >= 0; --k) {
    alpha[active[slot]] = k;
    for_each_composition(alpha, active, slot + 1, remaining - k, visit);
  }
  alpha[active[slot]] = 0;
}

}  // namespace

std::string to_string(KernelMethod m) {
  switch (m) {
    case KernelMethod::monomial_series: return "monomial-series";
    case KernelMethod::annulus_series: return "annulus-series";
    case KernelMethod::closed_form: return "closed-form";
    case KernelMethod::deflation: return "deflation";
    case KernelMethod::known_constant: return "constant";
  }
  return "unknown";
}

KernelValue kernel_reinhardt(const DomainSpec& domain, std::span<const Complex> w,
                             const Tolerance& tol) {
  tol.validate();
  if (!domain.is_balanced())
    throw ValidationError("kernel_reinhardt: expected an ellipsoid, ball or polydisk, got " +
                          domain.name());
  if (!contains(domain, w))
    throw ValidationError("kernel_reinhardt: base point is not inside " + domain.name());

  const std::size_t n = w.size();
  std::vector<std::size_t> active;
  std::vector<double> log_w2(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (w[j] != 0.0) {
      active.push_back(j);
      log_w2[j] = std::log(std::norm(w[j]));
    }
  }

  std::vector<int> alpha(n, 0);
  KernelValue out;
  out.method = KernelMethod::monomial_series;
  out.value = 1.0 / monomial_norm(domain, alpha);
  if (active.empty()) return out;

  double previous_block = out.value;
  for (int degree = 1; degree <= kMaxDegree; ++degree) {
    double block = 0.0;
    auto visit = [&](const std::vector<int>& a) {
      double log_term = -log_monomial_norm(domain, a);
      for (std::size_t j : active) log_term += a[j] * log_w2[j];
      block += std::exp(log_term);
    };
    for_each_composition(alpha, active, 0, degree, visit);
    out.value += block;

    const double q = block / previous_block;
    previous_block = block;
    if (block == 0.0) return out;
    if (q < 1.0) {
      out.error_bound = block * q / (1.0 - q);
      if (out.error_bound <= std::max(tol.abs_tol, tol.rel_tol * out.value)) return out;
    }
  }
  throw ConvergenceError("kernel_reinhardt: series did not converge (base point too close "
                         "to the boundary)");
}

KernelValue kernel_annulus(double r, Complex w, const Tolerance& tol) {
  tol.validate();
  if (!(r > 0.0 && r < 1.0))
    throw ValidationError(fmt::format("kernel_annulus: r = {} outside (0,1)", r));
  const double m = std::abs(w);
  if (!(m > r && m < 1.0))
    throw ValidationError(fmt::format("kernel_annulus: |w| = {} outside ({}, 1)", m, r));

  const double x = m * m;
  const double log_r = std::log(r);
  const double log_x = std::log(x);
  const double log_y = std::log(r * r / x);
  // j > 0 and j = -k < 0; both denominators are written as -expm1(2k log r).
  const auto positive = [&](std::size_t j) {
    const double k = static_cast<double>(j);
    return k * std::exp(k * log_x) / -std::expm1(2.0 * k * log_r);
  };
  const auto negative = [&](std::size_t j) {
    const double k = static_cast<double>(j);
    return k * std::exp(k * log_y) / -std::expm1(2.0 * k * log_r);
  };
  const SeriesSum pos = sum_positive_series(positive, 1, tol);
  const SeriesSum neg = sum_positive_series(negative, 1, tol);

  KernelValue out;
  out.method = KernelMethod::annulus_series;
  out.value = (1.0 / (-2.0 * log_r) + pos.value + neg.value) / (kPi * x);
  out.error_bound = (pos.tail_bound + neg.tail_bound) / (kPi * x);
  return out;
}

KernelValue kernel_disk(Complex w) {
  const double x = std::norm(w);
  if (!(x < 1.0)) throw ValidationError("kernel_disk: |w| >= 1");
  return {1.0 / (kPi * (1.0 - x) * (1.0 - x)), KernelMethod::closed_form, 0.0};
}

double power_difference(double a, double b) {
  return std::pow(1.0 + b, -a) * std::expm1(2.0 * a * std::atanh(b));
}

KernelValue kernel_ellipsoid_closed(double p, double b) {
  if (!(p > 0.0)) throw ValidationError("kernel_ellipsoid_closed: p must be > 0");
  if (!(b > 0.0 && b < 1.0))
    throw ValidationError(fmt::format("kernel_ellipsoid_closed: b = {} outside (0,1)", b));
  return {(p + 1.0) / (4.0 * kPi * kPi * b) * power_difference(p + 2.0, b),
          KernelMethod::closed_form, 0.0};
}

double kernel_deflation_route(const EllipsoidFamilyParams& params) {
  params.validate();
  const double p = (params.n - 1) / params.m;
  // E(1/2, 1/p) may be non-convex (1/p < 1/2), so only its volume is formed.
  const std::vector<double> reduced{0.5, 1.0 / p};
  return ellipsoid_volume(reduced) / volume(params.domain()) *
         kernel_ellipsoid_closed(p, params.b).value;
}

KernelValue kernel_deflated(const EllipsoidFamilyParams& params) {
  params.validate();
  const double a = params.a(), b = params.b;
  const double closed = (a - 1.0) / (4.0 * kPi * params.omega() * b) * power_difference(a, b);
  const double deflated = kernel_deflation_route(params);
  if (std::abs(closed - deflated) > 1e-12 * std::abs(closed))
    throw NumericalError(fmt::format(
        "deflation identity: closed form {} and deflation route {} disagree", closed, deflated));
  return {closed, KernelMethod::deflation, 0.0};
}

KernelValue kernel_g2_center() { return {2.0 / (kPi * kPi), KernelMethod::known_constant, 0.0}; }

}  // namespace bergsuita
