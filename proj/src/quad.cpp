#include "apbounds/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include <fmt/format.h>

#include "apbounds/errors.hpp"

namespace apb {
namespace {

constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525709342, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error, resabs;
  bool operator<(const Panel& o) const { return error < o.error; }
};

double eval(const RealFn& f, double t) {
  double v = f(t);
  if (!std::isfinite(v))
    throw DomainError(fmt::format("integrand is not finite at t = {}", t));
  return v;
}

Panel gk21(const RealFn& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = eval(f, c);
  double rk = fc * kWgk[10];
  double rg = 0.0;
  double resabs = std::fabs(rk);
  double fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = eval(f, c - dx);
    fv2[j] = eval(f, c + dx);
    const double s = fv1[j] + fv2[j];
    rk += kWgk[j] * s;
    resabs += kWgk[j] * (std::fabs(fv1[j]) + std::fabs(fv2[j]));
    if (j % 2 == 1) rg += kWg[j / 2] * s;
  }
  const double mean = 0.5 * rk;
  double resasc = kWgk[10] * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));

  const double ah = std::fabs(h);
  double err = std::fabs((rk - rg) * h);
  resasc *= ah;
  resabs *= ah;
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  return {a, b, rk * h, err, resabs};
}

std::vector<double> initial_breaks(double a, double b, const QuadOptions& o) {
  std::vector<double> br{a};
  if (a > 0.0 && b / a > 2.0 * o.geometric_ratio) {
    const double decades = std::log(b / a);
    int n = static_cast<int>(std::ceil(decades / std::log(o.geometric_ratio)));
    n = std::clamp(n, 1, o.max_initial_panels);
    const double step = decades / n;
    for (int i = 1; i < n; ++i) br.push_back(a * std::exp(step * i));
  }
  br.push_back(b);
  return br;
}

}  // namespace

QuadResult integrate(const RealFn& f, double a, double b, double tol,
                     const QuadOptions& opts) {
  if (!(tol > 0.0)) throw DomainError("integrate: tol must be positive");
  if (!(a <= b)) throw DomainError("integrate: requires a <= b");
  if (!std::isfinite(a) || !std::isfinite(b))
    throw DomainError("integrate: infinite limits are not supported");
  if (a == b) return {0.0, 0.0};

  std::priority_queue<Panel> heap;
  const auto br = initial_breaks(a, b, opts);
  for (size_t i = 0; i + 1 < br.size(); ++i) heap.push(gk21(f, br[i], br[i + 1]));

  auto totals = [&heap]() {
    // sum over a copy in a fixed order for determinism
    std::vector<Panel> ps;
    ps.reserve(heap.size());
    auto h = heap;
    while (!h.empty()) {
      ps.push_back(h.top());
      h.pop();
    }
    std::sort(ps.begin(), ps.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    CompensatedSum v, e, r;
    for (const auto& p : ps) {
      v += p.value;
      e += p.error;
      r += p.resabs;
    }
    return std::tuple{v.value(), e.value(), r.value()};
  };

  int panels = static_cast<int>(heap.size());
  constexpr double eps = std::numeric_limits<double>::epsilon();
  auto [run_value, run_err, run_abs] = totals();
  while (true) {
    // panel errors never drop below 50 eps |f| (roundoff), so accept twice that
    const double floor = 100.0 * eps * run_abs;
    if (run_err <= std::max({tol * std::fabs(run_value), tol, floor})) break;
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (panels >= opts.max_panels || !(worst.a < mid && mid < worst.b)) {
      const auto [v, e, abs_sum] = totals();
      (void)abs_sum;
      throw ConvergenceError(
          fmt::format("integrate: no convergence on [{}, {}] within {} panels "
                      "(error estimate {})",
                      a, b, panels, e),
          v, e);
    }
    heap.pop();
    const Panel l = gk21(f, worst.a, mid);
    const Panel r = gk21(f, mid, worst.b);
    heap.push(l);
    heap.push(r);
    ++panels;
    run_value += l.value + r.value - worst.value;
    run_err += l.error + r.error - worst.error;
    run_abs += l.resabs + r.resabs - worst.resabs;
  }
  const auto [value, err, abs_sum] = totals();
  (void)abs_sum;
  return {value, err};
}

}  // namespace apb
