#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "apbounds/arith.hpp"
#include "apbounds/constants.hpp"
#include "apbounds/weight.hpp"
#include "apbounds/zeros.hpp"

namespace apb {

struct Sample {
  double x = 0;
  std::uint64_t q = 0, a = 0;
  std::string label;  // which inequality or weight
  double lhs = 0, rhs = 0;
  double margin = 0;  // rhs - lhs
  bool skipped = false;
};

struct BoundReport {
  std::string check_name;
  std::vector<Sample> samples;
  std::size_t violations = 0;
  std::size_t skipped = 0;
  double runtime = 0;  // seconds
  bool comparison_only = false;
  std::vector<std::pair<std::string, std::string>> notes;

  bool passed() const { return violations == 0; }
  // records a sample; rhs <= 0 counts as skipped when skip_nonpositive
  void add(Sample s, bool skip_nonpositive = false);
  double min_margin() const;
};

std::string to_json(const BoundReport& r, int indent = 2);
std::string to_markdown(const BoundReport& r, std::size_t max_rows = 50);
BoundReport report_from_json(const std::string& text);

using Range = std::pair<double, double>;

// |exact - main| <= boundary budget + E2 for each weight and range
BoundReport verify_bpt(const ZeroTable& zeros, const std::vector<WeightSpec>& weights,
                       const std::vector<Range>& ranges);
// canonical weights: 1/t, 1/t^2, (1/4 + t^2)^(-1/2)
std::vector<WeightSpec> canonical_weights();
// n ranges in [2 pi, min(cap, zeros.max_height)], reproducible from seed
std::vector<Range> random_ranges(const ZeroTable& zeros, int n, std::uint64_t seed,
                                 double cap = 1e3);

// |N(T) - main - 7/8| <= R(T) on `points` heights in [lo, hi]
BoundReport verify_count_remainder(const ZeroTable& zeros, int points = 200, double lo = 15.0,
                                   double hi = 0.0);
// sum of 1/gamma^2 over table zeros in [T, max_height] <= tail_inverse_square(T)
BoundReport verify_tail(const ZeroTable& zeros, int points = 50);
// Dirichlet tables: sum of phi(gamma) <= lehman_sum_upper over (U, V) ranges
BoundReport verify_lehman(const std::vector<ZeroTable>& tables, const std::vector<WeightSpec>& weights,
                          const std::vector<Range>& ranges);

// residual r(x) in (1.545 - tau, 2.069 + tau), tau = 2 x^(3/2) tail_inverse_square(T)
inline constexpr double kPsi1ResidualLow = 1.545;
inline constexpr double kPsi1ResidualHigh = 2.069;
double psi1_truncation_tau(double x, double T);
double psi1_residual(const ZeroTable& zeros, double x, double T);
BoundReport verify_psi1_explicit(const ZeroTable& zeros, const std::vector<double>& xs,
                                 double T = 1e4);

// |psi(x + sqrt(x) log x) - psi(x) - sqrt(x) log x| <= k3 sqrt(x) log x - k4
BoundReport verify_short_interval(const ShortIntervalConstants& si, const std::vector<double>& xs,
                                  const SieveOptions& opts = {});

// pi, theta, psi in progressions against evaluate_bounds, plus psi - theta <= 1.44270 sqrt(x) log x
BoundReport verify_ap_bounds(const Pipeline& c, const APCountGrid& counts, Chain chain = Chain::general);
BoundReport verify_ap_bounds(const Pipeline& c, std::uint64_t q, std::uint64_t a,
                             const std::vector<double>& xs, Chain chain = Chain::general,
                             const SieveOptions& opts = {});

// |psi(x, chi) - delta x| and |theta(x, chi) - delta x| for every chi mod q
BoundReport verify_twisted_bounds(const Pipeline& c, std::uint64_t q, const std::vector<double>& xs,
                                  Chain chain = Chain::general, const SieveOptions& opts = {});

// our pi bound versus the baseline; no pass/fail
BoundReport compare_gm_baseline(const Pipeline& c, std::uint64_t q, const std::vector<double>& xs);

// n points log-spaced on [lo, hi]
std::vector<double> log_grid(double lo, double hi, int n);

}  // namespace apb
