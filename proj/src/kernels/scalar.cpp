#include <cmath>

#include "apbounds/kernels.hpp"
#include "apbounds/quad.hpp"

namespace apb::kernels {
namespace {

template <class F>
double sum_with(const double* g, std::size_t n, F f) {
  CompensatedSum s;
  for (std::size_t i = 0; i < n; ++i) s += f(g[i]);
  return s.value();
}

double weight_sum(const double* g, std::size_t n, Weight w) {
  switch (w) {
    case Weight::inv:
      return sum_with(g, n, [](double t) { return 1.0 / t; });
    case Weight::inv_square:
      return sum_with(g, n, [](double t) { return 1.0 / (t * t); });
    case Weight::inv_norm:
      return sum_with(g, n, [](double t) { return 1.0 / std::sqrt(0.25 + t * t); });
  }
  return 0.0;
}

std::size_t count_zero(const std::uint8_t* flags, std::size_t n) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i) c += flags[i] == 0;
  return c;
}

std::size_t collect_zero(const std::uint8_t* flags, std::size_t n, std::uint32_t* out) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (flags[i] == 0) out[c++] = static_cast<std::uint32_t>(i);
  return c;
}

}  // namespace

const Table& scalar() {
  static const Table t{"scalar", weight_sum, count_zero, collect_zero};
  return t;
}

}  // namespace apb::kernels
