#include <cmath>
#include <limits>
#include <numbers>

#include <fmt/format.h>

#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"

namespace apb {
namespace {

constexpr double kSeriesMax = 40.0;

double ei_series(double x) {
  CompensatedSum s;
  double term = 1.0;
  for (int k = 1; k < 500; ++k) {
    term *= x / k;
    const double t = term / k;
    s += t;
    if (t < 1e-18 * s.value()) break;
  }
  return std::numbers::egamma + std::log(x) + s.value();
}

double ei_asymptotic(double x) {
  double sum = 1.0;
  double term = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * k / x;
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < 1e-18) break;
  }
  return std::exp(x) / x * sum;
}

}  // namespace

double exp_integral_Ei(double x) {
  if (!(x > 0.0)) throw DomainError(fmt::format("Ei: requires x > 0, got {}", x));
  return x <= kSeriesMax ? ei_series(x) : ei_asymptotic(x);
}

double log_integral_Li(double x) {
  if (!(x >= 2.0)) throw DomainError(fmt::format("Li: requires x >= 2, got {}", x));
  if (x == 2.0) return 0.0;
  if (x <= 4.0)
    return integrate([](double t) { return 1.0 / std::log(t); }, 2.0, x, 1e-14).value;
  return exp_integral_Ei(std::log(x)) - exp_integral_Ei(std::numbers::ln2);
}

}  // namespace apb
