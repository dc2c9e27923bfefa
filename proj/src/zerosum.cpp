#include "apbounds/zerosum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"

namespace apb {

using std::numbers::pi;

WeightSpec WeightSpec::inverse() {
  return {"1/t", [](double t) { return 1.0 / t; },
          [](double t) { return -1.0 / (t * t); }, 0.0, true, true, true,
          kernels::Weight::inv};
}

WeightSpec WeightSpec::inverse_square() {
  return {"1/t^2", [](double t) { return 1.0 / (t * t); },
          [](double t) { return -2.0 / (t * t * t); }, 0.0, true, true, true,
          kernels::Weight::inv_square};
}

WeightSpec WeightSpec::inverse_norm() {
  return {"(1/4+t^2)^(-1/2)", [](double t) { return 1.0 / std::sqrt(0.25 + t * t); },
          [](double t) { return -t / std::pow(0.25 + t * t, 1.5); }, 0.0, true, true, true,
          kernels::Weight::inv_norm};
}

WeightSpec WeightSpec::constant(double c) {
  return {fmt::format("{}", c), [c](double) { return c; }, [](double) { return 0.0; }, 0.0,
          true, c >= 0.0, true, std::nullopt};
}

double count_remainder_R(double T) {
  if (!(T >= 2 * pi)) throw DomainError(fmt::format("R(T): requires T >= 2pi, got {}", T));
  const double l = std::log(T);
  return std::min(0.28 * l, 0.1038 * l + 0.2573 * std::log(l) + 9.3675);
}

double zeta_count_main(double T) { return T / (2 * pi) * std::log(T / (2 * pi * std::numbers::e)); }

double zeta_count_Q(const ZeroTable& zeros, double T) {
  if (zeros.kind != ZeroKind::zeta) throw PreconditionError("Q(T): requires a zeta table");
  if (T > zeros.max_height)
    throw CoverageError(fmt::format("Q(T): table covers up to {}, asked for {}",
                                    zeros.max_height, T));
  const auto& g = zeros.ordinates;
  const auto lo = std::lower_bound(g.begin(), g.end(), T);
  const auto hi = std::upper_bound(g.begin(), g.end(), T);
  // N(T) with a zero at T counted as 1/2
  const double N = static_cast<double>(lo - g.begin()) + 0.5 * static_cast<double>(hi - lo);
  return N - zeta_count_main(T) - 0.875;
}

namespace {

void check_bpt(const WeightSpec& phi, double U, double V) {
  if (!(U >= 2 * pi)) throw DomainError(fmt::format("bpt_sum: requires U >= 2pi, got {}", U));
  if (!(U <= V)) throw DomainError(fmt::format("bpt_sum: requires U <= V, got {} > {}", U, V));
  if (!phi.convex || !phi.non_increasing || !phi.nonneg)
    throw ContractError(fmt::format(
        "bpt_sum: weight '{}' must be flagged non-increasing, non-negative and convex",
        phi.name));
  if (U < phi.domain_start)
    throw DomainError(fmt::format("bpt_sum: U={} below the weight's domain start {}", U,
                                  phi.domain_start));
}

double bpt_main(const WeightSpec& phi, double U, double V) {
  const auto f = [&](double t) { return phi(t) * std::log(t / (2 * pi)); };
  return integrate(f, U, V, 1e-13).value / (2 * pi);
}

double bpt_e2(const WeightSpec& phi, double U) {
  return 2.0 * (kBptA0 + kBptA1 * std::log(U)) * std::fabs(phi.derivative(U)) +
         (kBptA1 + kBptA2) * phi(U) / U;
}

}  // namespace

SumEstimate bpt_sum(const WeightSpec& phi, double U, double V) {
  check_bpt(phi, U, V);
  SumEstimate s;
  s.main_term = bpt_main(phi, U, V);
  s.boundary_budget = phi(V) * count_remainder_R(V) + phi(U) * count_remainder_R(U);
  s.e2_bound = bpt_e2(phi, U);
  s.error_bound = s.e2_bound + s.boundary_budget;
  return s;
}

SumEstimate bpt_sum_measured(const WeightSpec& phi, double U, double V, const ZeroTable& zeros) {
  check_bpt(phi, U, V);
  SumEstimate s;
  s.main_term = bpt_main(phi, U, V);
  s.boundary_terms = phi(V) * zeta_count_Q(zeros, V) - phi(U) * zeta_count_Q(zeros, U);
  s.e2_bound = bpt_e2(phi, U);
  s.error_bound = s.e2_bound;
  return s;
}

CountBound dirichlet_count_bound(double q, double T) {
  if (!(q >= 2)) throw DomainError(fmt::format("N(T,chi): requires q >= 2, got {}", q));
  if (!(T >= 5.0 / 7.0)) throw DomainError(fmt::format("N(T,chi): requires T >= 5/7, got {}", T));
  return {T / pi * std::log(q * T / (2 * pi * std::numbers::e)),
          0.247 * std::log(q * T / (2 * pi)) + 6.894};
}

LehmanParts lehman_parts(const WeightSpec& phi, double U, double V, double q) {
  if (!(U >= 5.0 / 7.0)) throw DomainError(fmt::format("lehman: requires U >= 5/7, got {}", U));
  if (!(U <= V)) throw DomainError(fmt::format("lehman: requires U <= V, got {} > {}", U, V));
  if (!(q >= 2)) throw DomainError(fmt::format("lehman: requires q >= 2, got {}", q));
  if (!phi.non_increasing || !phi.nonneg)
    throw ContractError(fmt::format("lehman: weight '{}' must be non-increasing and non-negative",
                                    phi.name));
  const double lq = std::log(q);
  double i0, ilog, iinv;
  if (std::isinf(V)) {
    if (phi.kernel != kernels::Weight::inv_square)
      throw DomainError("lehman: an infinite upper limit is supported only for 1/t^2");
    i0 = 1.0 / U;
    ilog = (std::log(U / (2 * pi)) + 1.0) / U;
    iinv = 0.5 / (U * U);
  } else {
    i0 = integrate(phi.value, U, V, 1e-13).value;
    ilog = integrate([&](double t) { return phi(t) * std::log(t / (2 * pi)); }, U, V, 1e-13).value;
    iinv = integrate([&](double t) { return phi(t) / t; }, U, V, 1e-13).value;
  }
  LehmanParts p;
  p.main = lq / pi * i0 + ilog / pi;
  p.e3_bound = 2.0 * phi(U) * (0.247 * std::log(q * U / (2 * pi)) + 6.894) + 0.247 * iinv;
  return p;
}

double lehman_sum_upper(const WeightSpec& phi, double U, double V, double q) {
  const auto p = lehman_parts(phi, U, V, q);
  return p.main + p.e3_bound;
}

double tail_inverse_square(double T) {
  if (!(T >= 14.13)) throw DomainError(fmt::format("tail bound: requires T >= 14.13, got {}", T));
  return std::log(T) / (2 * pi * T);
}

}  // namespace apb
