#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"

namespace apb {
namespace {

using std::numbers::pi;

double quad(Profile p, const RealFn& f, double a, double b) {
  if (rules(p).tanh_sinh_quadrature) return integrate_tanh_sinh(f, a, b).value;
  return integrate(f, a, b, 1e-13).value;
}

struct Nu12 {
  double nu1, nu2;
};

// low-zero pieces: sums over lo <= |gamma| <= eta(x0)
Nu12 nu12(double log_x0, double lo, bool small, Profile p) {
  const double eta = std::exp(log_x0 / 2) / log_x0;
  const double c = std::sqrt(0.25 + lo * lo);
  const double i1 = quad(p, [](double t) { return 1.0 / std::sqrt(0.25 + t * t); }, lo, eta);
  const double i2 = quad(
      p, [](double t) { return std::log(t / (2 * pi)) / std::sqrt(0.25 + t * t); }, lo, eta);
  const double i3 =
      quad(p, [](double t) { return 1.0 / (t * std::sqrt(0.25 + t * t)); }, lo, eta);
  const double lg = small ? std::log(1.0 / (400 * pi)) : std::log(lo / (2 * pi));
  return {0.494 / c + i1 / pi, i2 / pi + 2 * (0.247 * lg + 6.894) / c + 0.247 * i3};
}

SozConstants base(double log_x0, Profile p) {
  const double L = log_x0;
  const double sx = std::exp(L / 2);
  const double eta = sx / L;
  const double u = L / sx;
  const double LL = std::log(L);
  const double lg = std::log(eta / (2 * pi));

  SozConstants s;
  s.log_x0 = L;
  s.profile = p;
  const auto [nu1, nu2] = nu12(L, 5.0 / 7.0, false, p);
  s.nu1 = nu1;
  s.nu2 = nu2;
  s.nu3 = 0.494 / eta - std::log(eta) / pi;
  s.nu4 = std::pow(std::log(2 * pi), 2) / (2 * pi) - lg * lg / (2 * pi) +
          2 * (6.894 - 0.247 * std::log(2 * pi * eta)) / eta + 0.247 / eta;

  const double r = std::sqrt(1 + u);
  const double r3 = std::pow(1 + u, 1.5) + 1;
  s.f1 = soz_f1(L);
  s.f2 = soz_f2(L);
  s.f3 = r * (0.5850 * LL / L - 0.2925) + r3 * (1 / (2 * pi) + (0.247 * L + 13.0034) / sx);
  s.f4 = r3 * (1 / pi + 0.494 * L / sx) + s.nu1 + s.nu3 + kTwoN57LogQ;
  s.f5 = (s.nu2 + s.nu4 + kTwoN57) * r - 0.5334;
  s.k1 = s.f3 + s.f5 / L;
  s.k2 = s.f4;
  return s;
}

}  // namespace

double soz_f1(double L) {
  const double u = L / std::exp(L / 2);
  const double v = std::log(L) / L;
  return std::sqrt(1 + u) * (1 / (8 * pi) - v / (2 * pi) + v * v / (2 * pi));
}

double soz_f2(double L) {
  const double u = L / std::exp(L / 2);
  return std::sqrt(1 + u) * (1 / (2 * pi) - std::log(L) / (pi * L));
}

SozConstants soz_constants(double log_x0, Profile p) {
  if (!(log_x0 >= 10.0))
    throw DomainError(fmt::format("soz_constants: requires log x0 >= 10, got {}", log_x0));
  return base(log_x0, p);
}

SozConstants soz_constants_small(double log_x0, double omega, Profile p) {
  if (!(log_x0 >= small_moduli_log_x0_min()))
    throw DomainError(fmt::format("soz_constants_small: requires log x0 >= log(1.05e7), got {}",
                                  log_x0));
  if (!(omega > 0.0)) throw DomainError("soz_constants_small: omega must be positive");
  SozConstants s = base(log_x0, p);
  const double L = log_x0;
  const double sx = std::exp(L / 2);
  const double r = std::sqrt(1 + L / sx);
  const double r3 = std::pow(1 + L / sx, 1.5) + 1;
  const auto [nu1, nu2] = nu12(L, 200.0, true, p);
  s.small_moduli = true;
  s.omega = omega;
  s.nu1_small = nu1;
  s.nu2_small = nu2;
  s.f4_small = r3 * (1 / pi + 0.494 * L / sx) + nu1 + s.nu3;
  s.f5_small = (omega + nu2 + s.nu4) * r - 0.5334;
  s.k1_small = s.f3 + *s.f5_small / L;
  s.k2_small = *s.f4_small;
  return s;
}

}  // namespace apb
