#pragma once

#include <functional>
#include <optional>
#include <string>

#include "apbounds/kernels.hpp"

namespace apb {

// A weight phi on [domain_start, inf) with caller-supplied derivatives.
struct WeightSpec {
  std::string name;
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double domain_start = 0.0;
  bool non_increasing = false;
  bool nonneg = false;
  bool convex = false;
  // set for weights that have a vectorised sum kernel
  std::optional<kernels::Weight> kernel;

  double operator()(double t) const { return value(t); }

  static WeightSpec inverse();         // 1/t
  static WeightSpec inverse_square();  // 1/t^2
  static WeightSpec inverse_norm();    // (1/4 + t^2)^(-1/2)
  static WeightSpec constant(double c);
};

}  // namespace apb
