#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <fmt/format.h>

#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"

namespace apb {
namespace {

constexpr double kLogK0Min = -12.0;  // kappa0 >= ~6e-6
constexpr double kLogK0Max = -1e-9;
constexpr double kLogK1Min = 1e-9;
constexpr double kLogK1Max = 9.2103403719761836;  // log 1e4
constexpr int kGrid = 48;
constexpr int kStarts = 4;
constexpr int kMaxIter = 400;

using Point = std::array<double, 2>;

struct Objective {
  double log_x0;
  Profile profile;
  int evals = 0;
  double operator()(const Point& p) {
    ++evals;
    if (p[0] <= kLogK0Min || p[0] >= kLogK0Max || p[1] <= kLogK1Min || p[1] >= kLogK1Max)
      return std::numeric_limits<double>::infinity();
    return short_interval_k3(log_x0, KappaParams::from(std::exp(p[0]), std::exp(p[1])), profile);
  }
};

struct Vertex {
  Point p;
  double f;
};

// Nelder-Mead with standard coefficients; returns the best vertex
Vertex nelder_mead(Objective& obj, Point start, double step, bool& converged) {
  std::array<Vertex, 3> s;
  s[0] = {start, obj(start)};
  for (int i = 0; i < 2; ++i) {
    Point q = start;
    q[i] += step;
    s[i + 1] = {q, obj(q)};
  }
  converged = false;
  for (int it = 0; it < kMaxIter; ++it) {
    std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    const double spread = std::fabs(s[2].f - s[0].f);
    const double size = std::max(std::fabs(s[2].p[0] - s[0].p[0]) + std::fabs(s[2].p[1] - s[0].p[1]),
                                 std::fabs(s[1].p[0] - s[0].p[0]) + std::fabs(s[1].p[1] - s[0].p[1]));
    if (spread <= 1e-13 * (1 + std::fabs(s[0].f)) && size < 1e-9) {
      converged = true;
      break;
    }
    Point c{(s[0].p[0] + s[1].p[0]) / 2, (s[0].p[1] + s[1].p[1]) / 2};
    auto along = [&](double t) {
      return Point{c[0] + t * (s[2].p[0] - c[0]), c[1] + t * (s[2].p[1] - c[1])};
    };
    const Point r = along(-1.0);
    const double fr = obj(r);
    if (fr < s[0].f) {
      const Point e = along(-2.0);
      const double fe = obj(e);
      s[2] = fe < fr ? Vertex{e, fe} : Vertex{r, fr};
    } else if (fr < s[1].f) {
      s[2] = {r, fr};
    } else {
      const Point k = fr < s[2].f ? along(-0.5) : along(0.5);
      const double fk = obj(k);
      if (fk < std::min(fr, s[2].f)) {
        s[2] = {k, fk};
      } else {
        for (int i = 1; i < 3; ++i) {
          s[i].p = {(s[i].p[0] + s[0].p[0]) / 2, (s[i].p[1] + s[0].p[1]) / 2};
          s[i].f = obj(s[i].p);
        }
      }
    }
  }
  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  return s[0];
}

}  // namespace

const std::vector<KappaRow>& published_kappa_rows() {
  static const std::vector<KappaRow> rows = {
      {10, {0.05989, 18.81137, 1.74663}},   {20, {0.0457, 37.77813, 1.74663}},
      {30, {0.03579, 52.1484, 1.86645}},    {40, {0.03167, 63.91776, 1.74663}},
      {50, {0.02886, 74.8239, 2.15968}},    {60, {0.02683, 85.00441, 2.28091}},
      {70, {0.02519, 94.2064, 2.37349}},    {80, {0.02405, 102.33995, 2.46139}},
      {90, {0.02297, 111.44257, 2.56007}},  {100, {0.02212, 120.2197, 2.65929}},
      {150, {0.01895, 157.01747, 2.97554}}, {200, {0.01717, 189.4314, 3.2531}},
      {250, {0.01566, 222.13937, 3.47886}}, {500, {0.01254, 347.59407, 4.35967}},
  };
  return rows;
}

std::optional<KappaParams> published_kappa(double log_x0) {
  for (const auto& r : published_kappa_rows())
    if (r.log_x0 == log_x0) return r.kappa;
  return std::nullopt;
}

KappaSearch optimize_kappa(double log_x0, Profile p) {
  if (!(log_x0 >= 10.0))
    throw DomainError(fmt::format("optimize_kappa: requires log x0 >= 10, got {}", log_x0));
  Objective obj{log_x0, p};

  std::vector<Vertex> grid;
  grid.reserve(kGrid * kGrid);
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      const Point q{kLogK0Min + (kLogK0Max - kLogK0Min) * (i + 0.5) / kGrid,
                    kLogK1Min + (kLogK1Max - kLogK1Min) * (j + 0.5) / kGrid};
      const double f = obj(q);
      if (std::isfinite(f)) grid.push_back({q, f});
    }
  }
  if (grid.empty())
    throw ConvergenceError(fmt::format("optimize_kappa: no admissible kappa at log x0 = {}",
                                       log_x0),
                           std::numeric_limits<double>::infinity(), 0.0);
  std::stable_sort(grid.begin(), grid.end(),
                   [](const Vertex& a, const Vertex& b) { return a.f < b.f; });

  const double step = (kLogK1Max - kLogK1Min) / kGrid;
  Vertex best = grid.front();
  bool any_converged = false;
  const int starts = std::min<int>(kStarts, static_cast<int>(grid.size()));
  for (int s = 0; s < starts; ++s) {
    bool conv = false;
    Vertex v = nelder_mead(obj, grid[s].p, step, conv);
    // restart once from the result to escape a collapsed simplex
    v = nelder_mead(obj, v.p, step / 8, conv);
    any_converged = any_converged || conv;
    if (v.f < best.f) best = v;
  }

  KappaSearch out;
  out.kappa = KappaParams::from(std::exp(best.p[0]), std::exp(best.p[1]));
  out.k3 = best.f;
  out.evaluations = obj.evals;
  out.converged = any_converged;
  return out;
}

}  // namespace apb
