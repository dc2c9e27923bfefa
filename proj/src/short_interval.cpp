#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"
#include "apbounds/zerosum.hpp"

namespace apb {
namespace {

using std::numbers::pi;

constexpr double kAlpha1 = 1 + 1.93378e-8;
constexpr double kAlpha2 = 2.69;
constexpr int kL7Grid = 64;
constexpr double kL7Span = 10.0;

double beta1() { return std::sqrt(3.0) * kAlpha1 - 0.999; }
double beta2() { return std::cbrt(3.0) * kAlpha2 - 2.0 / 3.0; }

bool admissible(double L, const KappaParams& k) {
  const double eta = std::exp(L / 2) / L;
  return satisfies_strict(k) && k.k1 * eta >= kGamma1 &&
         k.k0 * std::exp(L / 2) * L > 1.0;
}

double l7_at(double L, const KappaParams& k) {
  const double x = std::exp(L);
  const double sx = std::exp(L / 2);
  const double k0 = k.k0;
  return k0 + 21.0 / (20.0 * k0 * x * L * L) +
         std::max(8 * k0, 4 * k0 * std::log(x + (1 + k0) * sx * L) / std::log(k0 * sx * L)) +
         2 * beta1() / L + 2 * beta2() * std::exp(-L / 6) / L;
}

struct L7 {
  double value, argmax;
};

L7 l7_sup(double L0, const KappaParams& k) {
  L7 best{l7_at(L0, k), L0};
  for (int j = 1; j <= kL7Grid; ++j) {
    const double L = L0 + kL7Span * j / kL7Grid;
    const double v = l7_at(L, k);
    if (v > best.value) best = {v, L};
  }
  return best;
}

double l0_of(double L, const KappaParams& k, Profile p) {
  const double eta = std::exp(L / 2) / L;
  const double c = rules(p).sigma4_constant;
  return 1 / (k.k2 * pi) *
         (std::pow(1 + (1 + k.k0) / eta, 1.5) + std::pow(1 + k.k0 / eta, 1.5) + c) *
         (0.5 + std::log(k.k2 / k.k0) / L);
}

double l2_of(double L, const KappaParams& k) {
  const double eta = std::exp(L / 2) / L;
  return 1 + std::sqrt(1 + (1 + k.k0) / eta);
}

double l3_of(double L, const KappaParams& k) {
  const double eta = std::exp(L / 2) / L;
  const double a = k.k1 * eta;
  const double b = k.k2 * eta / k.k0;
  const double guard = std::max(0.0, std::log(k.k1 * k.k2 / (4 * pi * pi * k.k0)));
  return 2 * l2_of(L, k) *
         ((L + guard) / (4 * pi) * std::log(k.k2 / (k.k0 * k.k1)) +
          count_remainder_R(b) / b + count_remainder_R(a) / a +
          (4.2 + 4.134 * std::log(a)) / (a * a)) /
         L;
}

double l5_of(double L, const KappaParams& k, Profile p) {
  const double sx = std::exp(L / 2);
  const double a = k.k1 * sx / L;
  return l0_of(L, k, p) + l3_of(L, k) + a * std::log(a) / (pi * sx * L);
}

}  // namespace

KappaParams KappaParams::from(double k0, double k1) {
  return {k0, k1, std::max(kKappa2Floor, k0 * k1)};
}

bool satisfies_strict(const KappaParams& k) {
  return k.k0 > 0 && k.k0 < 1 && k.k1 > 0 && k.k2 >= kKappa2Floor * (1 - 1e-12) &&
         k.k2 >= k.k0 * k.k1 * (1 - 1e-12);
}

void validate(const KappaParams& k, KappaPolicy policy) {
  if (!(k.k0 > 0 && k.k0 < 1))
    throw ValidationError(fmt::format("kappa0 = {} must lie in (0, 1)", k.k0));
  if (!(k.k1 > 0)) throw ValidationError(fmt::format("kappa1 = {} must be positive", k.k1));
  if (policy == KappaPolicy::as_printed) {
    if (!(k.k2 > 0)) throw ValidationError(fmt::format("kappa2 = {} must be positive", k.k2));
    return;
  }
  if (!(k.k2 >= kKappa2Floor * (1 - 1e-12)))
    throw ValidationError(fmt::format("kappa2 = {} is below 1.74663", k.k2));
  if (!(k.k2 >= k.k0 * k.k1 * (1 - 1e-12)))
    throw ValidationError(
        fmt::format("kappa2 = {} is below kappa0*kappa1 = {}", k.k2, k.k0 * k.k1));
}

double short_interval_k3(double log_x0, const KappaParams& k, Profile p) {
  if (!(log_x0 >= 10.0) || !admissible(log_x0, k))
    return std::numeric_limits<double>::infinity();
  return l5_of(log_x0, k, p) + l7_sup(log_x0, k).value;
}

ShortIntervalConstants short_interval_constants(double log_x0, const KappaParams& k, Profile p,
                                                KappaPolicy policy) {
  if (!(log_x0 >= 10.0))
    throw DomainError(
        fmt::format("short_interval_constants: requires log x0 >= 10, got {}", log_x0));
  validate(k, policy);
  const double L = log_x0;
  const double sx = std::exp(L / 2);
  const double eta = sx / L;
  const double a = k.k1 * eta;
  if (!(a >= kGamma1))
    throw DomainError(fmt::format("kappa1 * eta(x0) = {} is below gamma1", a));
  if (!(k.k0 * sx * L > 1.0))
    throw DomainError("kappa0 * sqrt(x0) log x0 must exceed 1");

  ShortIntervalConstants s;
  s.log_x0 = L;
  s.kappa = k;
  s.profile = p;
  s.alpha1 = kAlpha1;
  s.alpha2 = kAlpha2;
  s.beta1 = beta1();
  s.beta2 = beta2();

  auto& l = s.l;
  l[0] = l0_of(L, k, p);
  l[1] = a / (k.k0 * pi) * std::log(a / (2 * pi * std::numbers::e * k.k0)) - 7.0 / 4.0 -
         2 * count_remainder_R(a);
  l[2] = l2_of(L, k);
  l[3] = l3_of(L, k);
  const auto f = [](double t) { return std::log(t / (2 * pi)) / std::sqrt(0.25 + t * t); };
  const double I = rules(p).tanh_sinh_quadrature ? integrate_tanh_sinh(f, kGamma1, a).value
                                                 : integrate(f, kGamma1, a, 1e-13).value;
  l[4] = l[2] * (I / pi + 2 * count_remainder_R(a) / std::sqrt(0.25 + a * a) +
                 2 * count_remainder_R(kGamma1) / std::sqrt(0.25 + kGamma1 * kGamma1) + 0.04509);
  l[5] = l[0] + l[3] + a * std::log(a) / (pi * sx * L);
  l[6] = -l[1] + l[4];
  const auto sup = l7_sup(L, k);
  l[7] = sup.value;
  s.l7_argmax_log_x = sup.argmax;
  s.k3 = l[5] + l[7];
  s.k4 = -l[6];
  return s;
}

}  // namespace apb
