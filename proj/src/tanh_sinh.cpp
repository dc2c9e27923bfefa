#include "apbounds/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "apbounds/errors.hpp"

#if defined(APB_HAVE_QUADMATH)
#include <quadmath.h>
#endif

// mpmath.quad at mp.prec = 53 works at 73 bits while summing and mapping
// nodes, and at 93 bits while generating the standard nodes. With a
// 128-bit float available the node mapping is rounded to 73 bits the same
// way, which matters near the endpoints of very long intervals.

namespace apb {
namespace {

constexpr int kPrec = 53;
constexpr int kMaxDegree = 6;
const double kEpsilon = std::ldexp(1.0, -55);

#if defined(APB_HAVE_QUADMATH)
using wide = __float128;

wide round_bits(wide v, int bits) {
  if (v == 0) return v;
  int e = 0;
  const wide m = frexpq(v, &e);
  return ldexpq(nearbyintq(ldexpq(m, bits)), e - bits);
}
wide wexp(wide v) { return expq(v); }
const wide kPi = 4 * atanq(wide(1));
#else
using wide = long double;

wide round_bits(wide v, int) { return v; }
wide wexp(wide v) { return std::exp(v); }
const wide kPi = std::numbers::pi_v<long double>;
#endif

wide r93(wide v) { return round_bits(v, 93); }
wide r73(wide v) { return round_bits(v, 73); }

struct Node {
  wide x;
  wide w;
};

std::vector<Node> nodes_for(int degree) {
  std::vector<Node> out;
  const wide pi4 = r93(kPi / 4);
  const wide tol = std::ldexp(1.0, -kPrec - 10);
  const wide t0 = std::ldexp(1.0, -degree);
  wide h;
  if (degree == 1) {
    out.push_back({0, r93(kPi / 2)});
    h = t0;
  } else {
    h = 2 * t0;
  }
  const wide e0 = r93(wexp(t0));
  wide a = r93(pi4 * e0);
  wide b = r93(pi4 / e0);
  const wide ud = r93(wexp(h));
  const wide urd = r93(1 / ud);
  const int kmax = 20 * (1 << degree);
  for (int k = 0; k <= kmax; ++k) {
    const wide c = r93(wexp(r93(a - b)));
    const wide d = r93(1 / c);
    const wide co = r93(r93(c + d) / 2);
    const wide si = r93(r93(c - d) / 2);
    const wide x = r93(si / co);
    const wide w = r93(r93(a + b) / r93(co * co));
    const wide diff = x > 1 ? x - 1 : 1 - x;
    if (diff <= tol) break;
    out.push_back({x, w});
    out.push_back({-x, w});
    a = r93(a * ud);
    b = r93(b * urd);
  }
  return out;
}

const std::vector<std::vector<Node>>& node_cache() {
  static const auto cache = [] {
    std::vector<std::vector<Node>> c(kMaxDegree + 1);
    for (int d = 1; d <= kMaxDegree; ++d) c[d] = nodes_for(d);
    return c;
  }();
  return cache;
}

double estimate_error(const std::vector<double>& r) {
  const size_t n = r.size();
  if (n == 2) return std::fabs(r[0] - r[1]);
  if (r[n - 1] == r[n - 2] && r[n - 2] == r[n - 3]) return 0.0;
  const double d12 = std::fabs(r[n - 1] - r[n - 2]);
  const double d13 = std::fabs(r[n - 1] - r[n - 3]);
  if (d12 == 0.0 || d13 == 0.0) return kEpsilon;
  const double D1 = std::log10(d12);
  const double D2 = std::log10(d13);
  const double D4 = std::min(0.0, std::max({D1 * D1 / D2, 2.0 * D1, -double(kPrec)}));
  return std::pow(10.0, std::trunc(D4));
}

}  // namespace

QuadResult integrate_tanh_sinh(const RealFn& f, double a, double b) {
  if (!(a <= b)) throw DomainError("integrate_tanh_sinh: requires a <= b");
  if (a == b) return {0.0, 0.0};
  const wide C = r73(r73(wide(b) - wide(a)) / 2);
  const wide D = r73(r73(wide(b) + wide(a)) / 2);
  std::vector<double> results;
  double err = 0.0;
  for (int degree = 1; degree <= kMaxDegree; ++degree) {
    const double h = std::ldexp(1.0, -degree);
    CompensatedSum S;
    if (!results.empty()) S += results.back() / (2.0 * h);
    for (const Node& n : node_cache()[degree]) {
      const double t = static_cast<double>(r73(D + r73(C * n.x)));
      const double w = static_cast<double>(r73(C * n.w));
      S += w * f(t);
    }
    results.push_back(h * S.value());
    if (degree > 1) {
      err = estimate_error(results);
      if (err <= kEpsilon) break;
    }
  }
  return {results.back(), err};
}

}  // namespace apb
