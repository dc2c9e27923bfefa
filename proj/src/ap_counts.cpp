#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "apbounds/arith.hpp"
#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"

namespace apb {
namespace {

std::uint64_t floor_x(double x, const char* who) {
  if (!std::isfinite(x) || x > 1e15)
    throw DomainError(fmt::format("{}: x = {} out of range", who, x));
  return x < 0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
}

void check_residue(std::uint64_t q, std::uint64_t a, const char* who) {
  if (q == 0) throw DomainError(fmt::format("{}: q must be >= 1", who));
  if (gcd(a % q, q) != 1)
    throw DomainError(fmt::format("{}: gcd(a, q) = gcd({}, {}) > 1", who, a, q));
}

}  // namespace

APCounts ap_counts(double x, std::uint64_t q, std::uint64_t a, const SieveOptions& opts) {
  check_residue(q, a, "ap_counts");
  if (!(x >= 2)) throw DomainError(fmt::format("ap_counts: requires x >= 2, got {}", x));
  const std::uint64_t N = floor_x(x, "ap_counts");
  const std::uint64_t r = a % q;
  APCounts out{x, q, r, 0, 0, 0};
  CompensatedSum theta;
  sieve_primes(
      2, N,
      [&](const std::uint64_t* p, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
          if (p[i] % q != r) continue;
          ++out.pi;
          theta += std::log(static_cast<double>(p[i]));
        }
      },
      opts);
  CompensatedSum psi = theta;
  for (const auto& pp : proper_prime_powers(2, N))
    if (pp.n % q == r) psi += std::log(static_cast<double>(pp.p));
  out.theta = theta.value();
  out.psi = psi.value();
  return out;
}

APCounts ap_counts_naive(double x, std::uint64_t q, std::uint64_t a) {
  check_residue(q, a, "ap_counts_naive");
  const std::uint64_t N = floor_x(x, "ap_counts_naive");
  if (N > 100'000'000) throw ResourceError("ap_counts_naive: x too large for trial division");
  const std::uint64_t r = a % q;
  APCounts out{x, q, r, 0, 0, 0};
  CompensatedSum theta, powers;
  for (std::uint64_t n = 2; n <= N; ++n) {
    if (n % q != r) continue;
    std::uint64_t p = n;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        p = d;
        break;
      }
    std::uint64_t m = n;
    while (m % p == 0) m /= p;
    if (m != 1) continue;
    if (p == n) {
      ++out.pi;
      theta += std::log(static_cast<double>(p));
    } else {
      powers += std::log(static_cast<double>(p));
    }
  }
  out.theta = theta.value();
  CompensatedSum psi = theta;
  psi += powers;
  out.psi = psi.value();
  return out;
}

double shared_factor_psi(double x, std::uint64_t q) {
  const std::uint64_t N = floor_x(x, "shared_factor_psi");
  CompensatedSum s;
  for (const auto& [p, k] : factorize(q)) {
    (void)k;
    const double lp = std::log(static_cast<double>(p));
    for (unsigned __int128 v = p; v <= N; v *= p) s += lp;
  }
  return s.value();
}

const APCounts& APCountGrid::at(std::size_t checkpoint, std::uint64_t q, std::uint64_t a) const {
  if (checkpoint >= xs_.size())
    throw DomainError(fmt::format("APCountGrid: checkpoint {} out of range", checkpoint));
  const auto it = std::find(qs_.begin(), qs_.end(), q);
  if (it == qs_.end()) throw DomainError(fmt::format("APCountGrid: modulus {} not in grid", q));
  check_residue(q, a, "APCountGrid");
  return cells_[checkpoint * row_ + offset_[it - qs_.begin()] + a % q];
}

APCountGrid ap_count_grid(std::vector<double> xs, std::vector<std::uint64_t> qs,
                          const SieveOptions& opts) {
  APCountGrid g;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(qs.begin(), qs.end());
  qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
  for (double x : xs)
    if (!(x >= 2)) throw DomainError(fmt::format("ap_count_grid: requires x >= 2, got {}", x));
  for (auto q : qs)
    if (q == 0 || q > (1u << 20)) throw DomainError(fmt::format("ap_count_grid: bad modulus {}", q));
  g.xs_ = xs;
  g.qs_ = qs;
  for (auto q : qs) {
    g.offset_.push_back(g.row_);
    g.row_ += q;
  }
  g.cells_.resize(xs.size() * g.row_);
  if (xs.empty() || qs.empty()) return g;

  // moduli share residue bins mod M for M a common multiple up to 2^18;
  // bins hold the primes since the last checkpoint and only touched bins
  // are folded into the running totals
  struct Group {
    std::uint64_t M;
    std::vector<std::size_t> members;
    std::vector<std::uint64_t> count;
    std::vector<CompensatedSum> theta;
    std::vector<std::uint32_t> touched;
  };
  std::vector<Group> groups;
  for (std::size_t j = qs.size(); j-- > 0;) {
    bool placed = false;
    for (auto& gr : groups) {
      const std::uint64_t l = std::lcm(gr.M, qs[j]);
      if (l <= (1u << 18)) {
        gr.M = l;
        gr.members.push_back(j);
        placed = true;
        break;
      }
    }
    if (!placed) groups.push_back({qs[j], {j}, {}, {}, {}});
  }
  for (auto& gr : groups) {
    gr.count.assign(gr.M, 0);
    gr.theta.assign(gr.M, {});
  }

  const std::uint64_t N = floor_x(xs.back(), "ap_count_grid");
  const auto powers = proper_prime_powers(2, N);
  std::vector<std::uint64_t> run_pi(g.row_, 0);
  std::vector<CompensatedSum> run_theta(g.row_), run_powers(g.row_);
  std::size_t next = 0, next_power = 0;
  auto snapshot = [&](std::size_t c) {
    const std::uint64_t Nc = floor_x(xs[c], "ap_count_grid");
    for (auto& gr : groups) {
      for (std::uint32_t r : gr.touched) {
        for (std::size_t j : gr.members) {
          const std::size_t k = g.offset_[j] + r % qs[j];
          run_pi[k] += gr.count[r];
          run_theta[k] += gr.theta[r];
        }
        gr.count[r] = 0;
        gr.theta[r] = {};
      }
      gr.touched.clear();
    }
    for (; next_power < powers.size() && powers[next_power].n <= Nc; ++next_power) {
      const auto& pp = powers[next_power];
      const double lp = std::log(static_cast<double>(pp.p));
      for (std::size_t j = 0; j < qs.size(); ++j) run_powers[g.offset_[j] + pp.n % qs[j]] += lp;
    }
    APCounts* row = &g.cells_[c * g.row_];
    for (std::size_t j = 0; j < qs.size(); ++j)
      for (std::uint64_t r = 0; r < qs[j]; ++r) {
        const std::size_t k = g.offset_[j] + r;
        CompensatedSum psi = run_theta[k];
        psi += run_powers[k];
        row[k] = {xs[c], qs[j], r, run_pi[k], run_theta[k].value(), psi.value()};
      }
  };
  sieve_primes(
      2, N,
      [&](const std::uint64_t* p, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
          while (next < xs.size() && static_cast<double>(p[i]) > xs[next]) snapshot(next++);
          const double lp = std::log(static_cast<double>(p[i]));
          for (auto& gr : groups) {
            const std::uint64_t r = p[i] % gr.M;
            if (gr.count[r]++ == 0) gr.touched.push_back(static_cast<std::uint32_t>(r));
            gr.theta[r] += lp;
          }
        }
      },
      opts);
  while (next < xs.size()) snapshot(next++);
  return g;
}

double psi_window(double lo, double hi, const SieveOptions& opts) {
  if (!(lo <= hi)) throw DomainError(fmt::format("psi_window: lo = {} > hi = {}", lo, hi));
  const std::uint64_t a = lo < 1 ? 1 : floor_x(lo, "psi_window") + 1;
  const std::uint64_t b = hi < 1 ? 0 : floor_x(hi, "psi_window");
  CompensatedSum s;
  if (a > b) return 0.0;
  sieve_primes(
      a, b,
      [&s](const std::uint64_t* p, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) s += std::log(static_cast<double>(p[i]));
      },
      opts);
  for (const auto& pp : proper_prime_powers(a, b)) s += std::log(static_cast<double>(pp.p));
  return s.value();
}

double short_interval_psi_delta(double x, const SieveOptions& opts) {
  if (!(x >= 2))
    throw DomainError(fmt::format("short_interval_psi_delta: requires x >= 2, got {}", x));
  const double h = std::sqrt(x) * std::log(x);
  return psi_window(x, x + h, opts) - h;
}

double psi1_plain(double x, const SieveOptions& opts) {
  if (!(x >= 2)) throw DomainError(fmt::format("psi1_plain: requires x >= 2, got {}", x));
  const std::uint64_t N = floor_x(x, "psi1_plain");
  CompensatedSum s;
  sieve_primes(
      2, N,
      [&](const std::uint64_t* p, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
          const double v = static_cast<double>(p[i]);
          s += std::log(v) * (x - v);
        }
      },
      opts);
  for (const auto& pp : proper_prime_powers(2, N))
    s += std::log(static_cast<double>(pp.p)) * (x - static_cast<double>(pp.n));
  return s.value();
}

}  // namespace apb
