#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"

namespace apb {
namespace {

constexpr double kQ30 = 1e30;
constexpr double kQ0 = 3.0;

void same_row(double log_x0, double a, double b) {
  if (a != log_x0 || b != log_x0)
    throw ValidationError(fmt::format(
        "mismatched log x0: requested {}, zero-sum constants at {}, short-interval at {}",
        log_x0, a, b));
}

double g2_above(double q) {
  const double lq = std::log(q);
  return 1.777 + 0.593 * std::log(lq) * lq * lq + 0.000278 * std::sqrt(q) * lq + lq;
}

double boundary_term(double L) { return (0.5 + 1.12 * L) * L / std::exp(L / 2); }

}  // namespace

double g2_below(double q) {
  const double lq = std::log(q);
  return 317.501 + 0.593 * std::log(lq) * lq * lq + 0.0758 * std::sqrt(q) * lq + 2.751 * lq;
}

double g2(double q) {
  if (!(q >= 3.0)) throw DomainError(fmt::format("g2: requires q >= 3, got {}", q));
  return q < kQ30 ? g2_below(q) : g2_above(q);
}

double c_diff_bound(double x, int a_chi) {
  if (!(x > 0) || !(std::log(x) >= 10.0))
    throw DomainError(fmt::format("c_diff_bound: requires log x >= 10, got x = {}", x));
  if (a_chi != 0 && a_chi != 1) throw DomainError("c_diff_bound: a_chi must be 0 or 1");
  const double L = std::log(x);
  const double sx = std::sqrt(x);
  return a_chi / x + (1 - a_chi) * (L + 1 + L / sx) + 7e-5 / (sx * L);
}

double trivial_zero_series(double x, int a_chi) {
  if (!(x > 1)) throw DomainError(fmt::format("trivial_zero_series: requires x > 1, got {}", x));
  if (a_chi != 0 && a_chi != 1) throw DomainError("trivial_zero_series: a_chi must be 0 or 1");
  const double half_log = 0.5 * std::log1p(-1 / (x * x));
  if (a_chi == 1) return 1 - x * std::atanh(1 / x) - half_log;
  return std::atanh(1 / x) + x * half_log;
}

TwistedPsiConstants twisted_psi_constants(double log_x0, const SozConstants& soz,
                                          const ShortIntervalConstants& si) {
  if (!(log_x0 >= 10.0))
    throw DomainError(fmt::format("twisted_psi_constants: requires log x0 >= 10, got {}",
                                  log_x0));
  same_row(log_x0, soz.log_x0, si.log_x0);
  const double L = log_x0;
  const double sx = std::exp(L / 2);
  const double x = std::exp(L);
  const double LL = std::log(L);
  const double k1 = soz.k1, k2 = soz.k2;

  TwistedPsiConstants t;
  t.log_x0 = L;
  t.profile = si.profile;
  t.k3 = si.k3;
  t.k4 = si.k4;
  t.g2_regimes = {g2_below(kQ30), g2_above(kQ30)};
  t.sigma1 = k1 + 1 / sx + 1 / x + t.g2_regimes[0] / (sx * L);
  t.sigma2 = k2 >= 0 ? 30 * k2 * std::log(10.0) : k2 * std::log(kQ0);
  t.sigma3 = 0.593 * LL * L / sx + k1 + std::max(k2, 0.0) + 0.000278 + 2 / sx + 1 / x;
  t.sigma4 = 0.593 * LL * L / sx + k1 + std::max(k2, 0.0) + 0.0758 + 3.751 / sx + 1 / x +
             315.724 / (sx * L);
  t.sigma5 = k1 + 0.000278 + 2 / sx + 1 / x +
             std::max(t.g2_regimes[0], 0.593 * LL * L * L) / (sx * L);
  t.k5 = k2 >= 0 ? t.sigma4 : t.sigma5;
  t.k6 = k2 >= 0 ? 0.0 : k2 * std::log(3.0);
  t.omega0 = si.k3 + t.k5;
  t.omega1 = t.k6 + boundary_term(L);
  t.omega2 = 1.777 - si.k4;
  return t;
}

TwistedPsiConstants twisted_psi_constants_small(double log_x0, const SozConstants& soz_small,
                                                const ShortIntervalConstants& si) {
  if (!(log_x0 >= small_moduli_log_x0_min()))
    throw DomainError(fmt::format(
        "twisted_psi_constants_small: requires log x0 >= log(1.05e7), got {}", log_x0));
  if (!soz_small.small_moduli || !soz_small.k1_small)
    throw PreconditionError("twisted_psi_constants_small: needs soz_constants_small output");
  TwistedPsiConstants t = twisted_psi_constants(log_x0, soz_small, si);
  const double L = log_x0;
  const double sx = std::exp(L / 2);
  const double x = std::exp(L);

  double k1t = *soz_small.k1_small;
  if (const auto anchor = rules(si.profile).small_k1_anchor; anchor && *anchor != L)
    k1t = *soz_constants_small(*anchor, soz_small.omega, si.profile).k1_small;
  const double k2t = *soz_small.k2_small;

  t.small_moduli = true;
  t.sigma6 = k1t + 1 / sx + 1 / x + g2(kSmallModuliMaxQ) / (sx * L);
  t.sigma7 = k2t >= 0 ? 4 * k2t * std::log(10.0) : k2t * std::log(3.0);
  t.omega0_small = si.k3 + *t.sigma6;
  t.omega1_small = *t.sigma7 + boundary_term(L);
  t.omega2_small = -si.k4;
  return t;
}

}  // namespace apb
