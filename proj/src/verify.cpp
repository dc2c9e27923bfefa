#include "apbounds/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"
#include "apbounds/zerosum.hpp"

namespace apb {
namespace {

using std::numbers::pi;

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

Sample make(double x, std::uint64_t q, std::uint64_t a, std::string label, double lhs, double rhs) {
  return {x, q, a, std::move(label), lhs, rhs, rhs - lhs, false};
}

}  // namespace

void BoundReport::add(Sample s, bool skip_nonpositive) {
  s.margin = s.rhs - s.lhs;
  if (skip_nonpositive && !(s.rhs > 0)) {
    s.skipped = true;
    ++skipped;
  } else if (!comparison_only && !(s.lhs <= s.rhs)) {
    ++violations;
  }
  samples.push_back(std::move(s));
}

double BoundReport::min_margin() const {
  double m = INFINITY;
  for (const auto& s : samples)
    if (!s.skipped) m = std::min(m, s.margin);
  return m;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (!(lo > 0) || !(hi >= lo) || n < 1)
    throw DomainError(fmt::format("log_grid: bad arguments ({}, {}, {})", lo, hi, n));
  if (n == 1) return {lo};
  std::vector<double> out;
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out.push_back(i == 0 ? lo : i == n - 1 ? hi : std::exp(a + (b - a) * i / (n - 1)));
  return out;
}

std::vector<WeightSpec> canonical_weights() {
  return {WeightSpec::inverse(), WeightSpec::inverse_square(), WeightSpec::inverse_norm()};
}

std::vector<Range> random_ranges(const ZeroTable& zeros, int n, std::uint64_t seed, double cap) {
  const double top = std::min(cap, zeros.max_height);
  if (!(top > 2 * pi)) throw CoverageError(fmt::format("random_ranges: table height {} too small", top));
  std::mt19937_64 rng(seed);
  const double lo = std::log(2 * pi), hi = std::log(top);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Range> out;
  for (int i = 0; i < n; ++i) {
    double a = std::exp(u(rng)), b = std::exp(u(rng));
    if (a > b) std::swap(a, b);
    out.push_back({std::max(a, 2 * pi), std::min(b, top)});
  }
  return out;
}

BoundReport verify_bpt(const ZeroTable& zeros, const std::vector<WeightSpec>& weights,
                       const std::vector<Range>& ranges) {
  if (zeros.kind != ZeroKind::zeta) throw PreconditionError("verify_bpt: requires a zeta table");
  Stopwatch sw;
  BoundReport r;
  r.check_name = "bpt";
  for (const auto& phi : weights)
    for (const auto& [U, V] : ranges) {
      const auto est = bpt_sum(phi, U, V);
      const double exact = exact_weighted_sum(zeros, phi, U, V, false);
      r.add(make(V, 0, 0, fmt::format("{} [{:.6g}, {:.6g}]", phi.name, U, V),
                 std::fabs(exact - est.main_term), est.error_bound));
    }
  r.notes.push_back({"zeros", zeros.source});
  r.runtime = sw.seconds();
  return r;
}

BoundReport verify_count_remainder(const ZeroTable& zeros, int points, double lo, double hi) {
  if (zeros.kind != ZeroKind::zeta)
    throw PreconditionError("verify_count_remainder: requires a zeta table");
  if (hi <= 0) hi = zeros.max_height;
  if (hi > zeros.max_height)
    throw CoverageError(fmt::format("verify_count_remainder: table covers up to {}, asked for {}",
                                    zeros.max_height, hi));
  if (!(lo >= 2 * pi) || !(lo < hi) || points < 2)
    throw DomainError("verify_count_remainder: bad grid");
  Stopwatch sw;
  BoundReport r;
  r.check_name = "count_remainder";
  for (int i = 0; i < points; ++i) {
    const double T = lo + (hi - lo) * i / (points - 1);
    const double Q = zeta_count_Q(zeros, T);
    r.add(make(T, 0, 0, "N(T)", std::fabs(Q), count_remainder_R(T)));
  }
  r.runtime = sw.seconds();
  return r;
}

BoundReport verify_tail(const ZeroTable& zeros, int points) {
  if (zeros.kind != ZeroKind::zeta) throw PreconditionError("verify_tail: requires a zeta table");
  Stopwatch sw;
  BoundReport r;
  r.check_name = "tail";
  const auto w = WeightSpec::inverse_square();
  for (double T : log_grid(14.13, zeros.max_height / 2, points)) {
    const double partial = exact_weighted_sum(zeros, w, T, zeros.max_height, false);
    r.add(make(T, 0, 0, "sum 1/gamma^2 over [T, max]", partial, tail_inverse_square(T)));
  }
  r.notes.push_back({"scope", "partial sums up to the table height (necessary condition)"});
  r.runtime = sw.seconds();
  return r;
}

BoundReport verify_lehman(const std::vector<ZeroTable>& tables,
                          const std::vector<WeightSpec>& weights, const std::vector<Range>& ranges) {
  Stopwatch sw;
  BoundReport r;
  r.check_name = "lehman";
  for (const auto& t : tables) {
    if (t.kind != ZeroKind::dirichlet || !t.label)
      throw PreconditionError("verify_lehman: requires labelled Dirichlet tables");
    const auto q = t.label->q;
    for (const auto& phi : weights)
      for (const auto& [U, V] : ranges) {
        if (V > t.max_height) continue;
        const double exact = exact_weighted_sum(t, phi, U, V, false);
        r.add(make(V, q, t.label->index, fmt::format("{} [{:.6g}, {:.6g}]", phi.name, U, V), exact,
                   lehman_sum_upper(phi, U, V, static_cast<double>(q))));
      }
  }
  r.runtime = sw.seconds();
  return r;
}

double psi1_truncation_tau(double x, double T) { return 2.0 * std::pow(x, 1.5) * tail_inverse_square(T); }

double psi1_residual(const ZeroTable& zeros, double x, double T) {
  if (zeros.kind != ZeroKind::zeta) throw PreconditionError("psi1_residual: requires a zeta table");
  if (T > zeros.max_height)
    throw CoverageError(fmt::format("zero table '{}' covers heights up to {}, asked for {}",
                                    zeros.source, zeros.max_height, T));
  const double lx = std::log(x);
  const double x32 = std::pow(x, 1.5);
  CompensatedSum zs;
  for (double g : zeros.ordinates) {
    if (g > T) break;
    const std::complex<double> rho(0.5, g);
    const std::complex<double> phase = std::polar(1.0, g * lx);
    zs += 2.0 * (x32 * phase / (rho * (rho + 1.0))).real();
  }
  CompensatedSum r;
  r += psi1_plain(x);
  r += -0.5 * x * x;
  r += zs.value();
  r += x * std::log(2 * pi);
  return r.value();
}

BoundReport verify_psi1_explicit(const ZeroTable& zeros, const std::vector<double>& xs, double T) {
  Stopwatch sw;
  BoundReport r;
  r.check_name = "psi1_explicit";
  for (double x : xs) {
    const double res = psi1_residual(zeros, x, T);
    const double tau = psi1_truncation_tau(x, T);
    const double mid = 0.5 * (kPsi1ResidualLow + kPsi1ResidualHigh);
    const double half = 0.5 * (kPsi1ResidualHigh - kPsi1ResidualLow) + tau;
    r.add(make(x, 0, 0, fmt::format("residual {:.6f}, tau {:.3g}", res, tau), std::fabs(res - mid),
               half));
  }
  r.notes.push_back({"T_trunc", fmt::format("{}", T)});
  r.runtime = sw.seconds();
  return r;
}

BoundReport verify_short_interval(const ShortIntervalConstants& si, const std::vector<double>& xs,
                                  const SieveOptions& opts) {
  Stopwatch sw;
  BoundReport r;
  r.check_name = "short_interval";
  const double x0 = std::exp(si.log_x0);
  for (double x : xs) {
    if (!(x >= x0 * (1 - 1e-15)))
      throw PreconditionError(
          fmt::format("verify_short_interval: x = {} below x0 = e^{}", x, si.log_x0));
    const double sl = std::sqrt(x) * std::log(x);
    r.add(make(x, 0, 0, "psi window", std::fabs(short_interval_psi_delta(x, opts)),
               si.k3 * sl - si.k4),
          true);
  }
  r.runtime = sw.seconds();
  return r;
}

namespace {

bool admissible(BoundKind k, double x, std::uint64_t q, const Pipeline& c, Chain chain) {
  try {
    (void)evaluate_bounds(k, x, static_cast<double>(q), c, chain);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

}  // namespace

BoundReport verify_ap_bounds(const Pipeline& c, const APCountGrid& counts, Chain chain) {
  Stopwatch sw;
  BoundReport r;
  r.check_name = chain == Chain::general ? "ap_bounds" : "ap_bounds_small_moduli";
  std::size_t inadmissible = 0;
  for (std::size_t i = 0; i < counts.checkpoints().size(); ++i) {
    const double x = counts.checkpoints()[i];
    const double L = std::log(x), sx = std::sqrt(x);
    const double li = log_integral_Li(x);
    for (auto q : counts.moduli()) {
      if (q < 3) continue;
      if (!admissible(BoundKind::psi_ap, x, q, c, chain)) {
        ++inadmissible;
        continue;
      }
      const double phi = static_cast<double>(euler_phi(q));
      const double qd = static_cast<double>(q);
      const double rpi = evaluate_bounds(BoundKind::pi_ap, x, qd, c, chain);
      const double rth = evaluate_bounds(BoundKind::theta_ap, x, qd, c, chain);
      const double rps = evaluate_bounds(BoundKind::psi_ap, x, qd, c, chain);
      for (std::uint64_t a = 0; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        const auto& k = counts.at(i, q, a);
        r.add(make(x, q, a, "pi", std::fabs(static_cast<double>(k.pi) - li / phi), rpi), true);
        r.add(make(x, q, a, "theta", std::fabs(k.theta - x / phi), rth), true);
        r.add(make(x, q, a, "psi", std::fabs(k.psi - x / phi), rps), true);
        r.add(make(x, q, a, "psi-theta", k.psi - k.theta, kThetaPsiGap * sx * L));
      }
    }
  }
  r.notes.push_back({"log_x0", fmt::format("{}", c.log_x0)});
  r.notes.push_back({"profile", std::string(to_string(c.profile))});
  r.notes.push_back({"inadmissible (x, q) pairs", fmt::format("{}", inadmissible)});
  r.runtime = sw.seconds();
  return r;
}

BoundReport verify_ap_bounds(const Pipeline& c, std::uint64_t q, std::uint64_t a,
                             const std::vector<double>& xs, Chain chain, const SieveOptions& opts) {
  if (q == 0 || gcd(a % q, q) != 1)
    throw DomainError(fmt::format("verify_ap_bounds: gcd(a, q) = gcd({}, {}) > 1", a, q));
  for (double x : xs) (void)evaluate_bounds(BoundKind::psi_ap, x, static_cast<double>(q), c, chain);
  Stopwatch sw;
  const auto grid = ap_count_grid(xs, {q}, opts);
  auto full = verify_ap_bounds(c, grid, chain);
  BoundReport r;
  r.check_name = full.check_name;
  r.notes = full.notes;
  for (auto& s : full.samples)
    if (s.a == a % q) r.add(s, s.label != "psi-theta");
  r.runtime = sw.seconds();
  return r;
}

BoundReport verify_twisted_bounds(const Pipeline& c, std::uint64_t q, const std::vector<double>& xs,
                                  Chain chain, const SieveOptions& opts) {
  Stopwatch sw;
  BoundReport r;
  r.check_name = "twisted_bounds";
  const auto grid = ap_count_grid(xs, {q}, opts);
  const auto chars = character_table(q);
  const double qd = static_cast<double>(q);
  for (std::size_t i = 0; i < grid.checkpoints().size(); ++i) {
    const double x = grid.checkpoints()[i];
    const double sx = std::sqrt(x), L = std::log(x);
    for (const auto& chi : chars) {
      std::complex<double> ps = 0, th = 0;
      for (std::uint64_t a = 1; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        const auto& k = grid.at(i, q, a);
        ps += chi(a) * k.psi;
        th += chi(a) * k.theta;
      }
      const double delta = chi.is_principal() ? x : 0.0;
      double rps, rth;
      if (chi.is_principal()) {
        if (!admissible(BoundKind::principal, x, q, c, chain)) continue;
        rps = evaluate_bounds(BoundKind::principal, x, qd, c, chain);
        rth = rps + kThetaPsiGap * sx * L;
      } else {
        if (!admissible(BoundKind::psi_chi, x, q, c, chain)) continue;
        rps = evaluate_bounds(BoundKind::psi_chi, x, qd, c, chain);
        rth = evaluate_bounds(BoundKind::theta_chi, x, qd, c, chain);
      }
      r.add(make(x, q, chi.index(), "psi_chi", std::abs(ps - delta), rps), true);
      r.add(make(x, q, chi.index(), "theta_chi", std::abs(th - delta), rth), true);
    }
  }
  r.runtime = sw.seconds();
  return r;
}

BoundReport compare_gm_baseline(const Pipeline& c, std::uint64_t q, const std::vector<double>& xs) {
  Stopwatch sw;
  BoundReport r;
  r.check_name = "gm_baseline";
  r.comparison_only = true;
  for (double x : xs) {
    const double ours = evaluate_bounds(BoundKind::pi_ap, x, static_cast<double>(q), c);
    r.add(make(x, q, 0, "pi_ap vs baseline", ours, gm_baseline_pi_bound(x, q)));
  }
  r.notes.push_back({"log_x0", fmt::format("{}", c.log_x0)});
  r.notes.push_back({"margin", "baseline minus ours; positive where ours is smaller"});
  r.runtime = sw.seconds();
  return r;
}

}  // namespace apb
