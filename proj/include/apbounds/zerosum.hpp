#pragma once

#include "apbounds/weight.hpp"
#include "apbounds/zeros.hpp"

namespace apb {

inline constexpr double kBptA0 = 2.067;
inline constexpr double kBptA1 = 0.059;
inline constexpr double kBptA2 = 1.0 / 150.0;
inline constexpr double kGamma1 = 14.13472;

struct SumEstimate {
  double main_term = 0.0;
  // phi(V)Q(V) - phi(U)Q(U); zero unless Q was measured from data
  double boundary_terms = 0.0;
  double boundary_budget = 0.0;  // phi(V)R(V) + phi(U)R(U), or 0 when measured
  double e2_bound = 0.0;
  double error_bound = 0.0;      // e2_bound + boundary_budget
  double estimate() const { return main_term + boundary_terms; }
};

// R(T) = min{0.28 log T, 0.1038 log T + 0.2573 log log T + 9.3675}
double count_remainder_R(double T);

// (T/2pi) log(T/(2pi e)); N(T) = this + 7/8 + Q(T)
double zeta_count_main(double T);

// Q(T) measured from a zeta table
double zeta_count_Q(const ZeroTable& zeros, double T);

SumEstimate bpt_sum(const WeightSpec& phi, double U, double V);
// same, with Q(U), Q(V) taken from the table so only E2 remains
SumEstimate bpt_sum_measured(const WeightSpec& phi, double U, double V, const ZeroTable& zeros);

struct CountBound {
  double main;
  double remainder;
};
// |N(T,chi) - (T/pi) log(qT/(2 pi e))| <= 0.247 log(qT/2pi) + 6.894
CountBound dirichlet_count_bound(double q, double T);

// Upper bound for the sum of phi(gamma) over U <= |gamma| <= V for a
// character of conductor q. V may be +inf only for the 1/t^2 weight.
double lehman_sum_upper(const WeightSpec& phi, double U, double V, double q);
// main term and |E3| bound separately
struct LehmanParts {
  double main;
  double e3_bound;
};
LehmanParts lehman_parts(const WeightSpec& phi, double U, double V, double q);

// log T / (2 pi T) >= sum over gamma >= T of 1/gamma^2
double tail_inverse_square(double T);

}  // namespace apb
