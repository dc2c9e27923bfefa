#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"

namespace apb {
namespace {

using std::numbers::pi;

constexpr double kPrincipalXMin = 73.2;

}  // namespace

std::string_view to_string(BoundKind k) {
  switch (k) {
    case BoundKind::psi_chi: return "psi_chi";
    case BoundKind::theta_chi: return "theta_chi";
    case BoundKind::psi_ap: return "psi_ap";
    case BoundKind::theta_ap: return "theta_ap";
    case BoundKind::pi_ap: return "pi_ap";
    case BoundKind::principal: return "principal";
  }
  return "?";
}

BoundKind parse_bound_kind(std::string_view s) {
  for (auto k : {BoundKind::psi_chi, BoundKind::theta_chi, BoundKind::psi_ap,
                 BoundKind::theta_ap, BoundKind::pi_ap, BoundKind::principal})
    if (to_string(k) == s) return k;
  throw DomainError(fmt::format(
      "unknown bound kind '{}' (psi_chi|theta_chi|psi_ap|theta_ap|pi_ap|principal)", s));
}

double evaluate_bounds(BoundKind kind, double x, double q, const Pipeline& c, Chain chain) {
  if (!(q >= 3)) throw PreconditionError(fmt::format("bound: requires q >= 3, got {}", q));
  const double L = std::log(x);
  const double sx = std::sqrt(x);
  const double lq = std::log(q);
  if (kind == BoundKind::principal) {
    if (!(x >= kPrincipalXMin))
      throw PreconditionError(fmt::format("principal bound: requires x >= 73.2, got {}", x));
    return sx * L * L / (8 * pi) + 1.12 * lq * L;
  }
  const double x0 = std::exp(c.log_x0);
  if (!(x >= x0 * (1 - 1e-15)))
    throw PreconditionError(
        fmt::format("bound: requires x >= x0 = e^{} (got x = {})", c.log_x0, x));

  const bool small = chain == Chain::small_moduli;
  if (small) {
    if (!c.ap.a_small || !c.tp.omega0_small)
      throw PreconditionError(fmt::format(
          "bound: small-moduli constants unavailable at log x0 = {}", c.log_x0));
    if (q > kSmallModuliMaxQ)
      throw PreconditionError(fmt::format("small-moduli bound: requires q <= 10000, got {}", q));
  } else if (!(x0 >= q)) {
    throw PreconditionError(fmt::format("bound: requires x0 >= q (x0 = e^{}, q = {})",
                                        c.log_x0, q));
  }

  const double o0 = small ? *c.tp.omega0_small : c.tp.omega0;
  const double o1 = small ? *c.tp.omega1_small : c.tp.omega1;
  const double o2 = small ? *c.tp.omega2_small : c.tp.omega2;
  const auto& a = small ? *c.ap.a_small : c.ap.a;
  const double head = L / (8 * pi) + lq / (2 * pi);
  switch (kind) {
    case BoundKind::psi_chi: return (head + o0) * sx * L + o1 * sx + o2;
    case BoundKind::theta_chi: return (head + kThetaPsiGap + o0) * sx * L + o1 * sx + o2;
    case BoundKind::psi_ap: return (head + a[5]) * sx * L + a[4];
    case BoundKind::theta_ap: return (head + a[3]) * sx * L + a[4];
    case BoundKind::pi_ap: return (L / (8 * pi) + a[0] * lq / (2 * pi) + a[1]) * sx + a[2];
    case BoundKind::principal: break;
  }
  return 0.0;
}

double prime_divisor_sum(std::uint64_t q) {
  if (q == 0) throw DomainError("prime_divisor_sum: q must be positive");
  double s = 0.0;
  for (std::uint64_t p = 2; p * p <= q; ++p) {
    if (q % p) continue;
    s += std::log(double(p)) / double(p - 1);
    while (q % p == 0) q /= p;
  }
  if (q > 1) s += std::log(double(q)) / double(q - 1);
  return s;
}

double gm_baseline_pi_bound(double x, std::uint64_t q) {
  if (!(x >= 2)) throw DomainError(fmt::format("gm bound: requires x >= 2, got {}", x));
  if (q < 3) throw DomainError(fmt::format("gm bound: requires q >= 3, got {}", q));
  const double L = std::log(x);
  const double sx = std::sqrt(x);
  const double lq = std::log(double(q));
  return (L / (8 * pi) + (1 + 3 / L) * lq / (2 * pi) + 1 / (4 * pi) + 6 / L) * sx -
         sx * (1 / (2 * pi) + 3 / L) * prime_divisor_sum(q);
}

}  // namespace apb
