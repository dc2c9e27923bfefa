#pragma once

#include <functional>

namespace apb {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

using RealFn = std::function<double(double)>;

struct QuadOptions {
  int max_panels = 20000;
  // geometric pre-split ratio used when 0 < a and b/a is large
  double geometric_ratio = 2.0;
  int max_initial_panels = 4096;
};

// Adaptive 21-point Gauss-Kronrod with global error control.
// Converged when abs_error_estimate <= max(tol*|value|, tol).
QuadResult integrate(const RealFn& f, double a, double b, double tol = 1e-12,
                     const QuadOptions& opts = {});

// Double-exponential rule on the single panel [a, b], reproducing the
// default scheme of mpmath.quad at 53-bit precision (degrees 1..6, stop on
// the Bailey-Borwein-Girgensohn error extrapolation). Not adaptive: for
// integrands spread over many decades it under-resolves.
QuadResult integrate_tanh_sinh(const RealFn& f, double a, double b);

double exp_integral_Ei(double x);
double log_integral_Li(double x);

// Neumaier compensated sum
class CompensatedSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if ((sum_ >= 0 ? sum_ : -sum_) >= (v >= 0 ? v : -v))
      comp_ += (sum_ - t) + v;
    else
      comp_ += (v - t) + sum_;
    sum_ = t;
  }
  CompensatedSum& operator+=(double v) {
    add(v);
    return *this;
  }
  CompensatedSum& operator+=(const CompensatedSum& o) {
    add(o.sum_);
    add(o.comp_);
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace apb
