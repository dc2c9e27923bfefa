#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"

namespace apb {
namespace {

using std::numbers::pi;

struct Chain6 {
  double o3, o4, o6, o7;
  std::array<double, 6> a;
};

Chain6 chain(double L, double o0, double o1, double o2, double o5, bool clamp) {
  Chain6 c;
  c.o3 = o0 + (clamp ? std::max(o1, 0.0) : o1) / L + 0.56 * L / std::exp(L / 2);
  c.o4 = c.o3 + kThetaPsiGap;
  c.o6 = 1 / (8 * pi) + c.o4 * o5;
  c.o7 = (1 + o2) / std::numbers::ln2;
  c.a = {o5, c.o6, c.o7, c.o4, o2, c.o3};
  return c;
}

}  // namespace

APConstants ap_constants(double log_x0, const TwistedPsiConstants& tp) {
  if (!(log_x0 >= 10.0))
    throw DomainError(fmt::format("ap_constants: requires log x0 >= 10, got {}", log_x0));
  if (tp.log_x0 != log_x0)
    throw ValidationError(fmt::format("ap_constants: twisted constants at log x0 = {}, asked {}",
                                      tp.log_x0, log_x0));
  const double L = log_x0;
  const auto& r = rules(tp.profile);

  APConstants ap;
  ap.log_x0 = L;
  ap.profile = tp.profile;
  ap.omega2 = tp.omega2;
  ap.omega5 = 1 + (exp_integral_Ei(L / 2) - exp_integral_Ei(std::numbers::ln2 / 2)) /
                      std::exp(L / 2);
  const auto g = chain(L, tp.omega0, tp.omega1, tp.omega2, ap.omega5, r.clamp_omega1);
  ap.omega3 = g.o3;
  ap.omega4 = g.o4;
  ap.omega6 = g.o6;
  ap.omega7 = g.o7;
  ap.a = g.a;
  if (tp.small_moduli) {
    const auto s = chain(L, *tp.omega0_small, *tp.omega1_small, *tp.omega2_small, ap.omega5,
                         r.clamp_small_omega1);
    ap.small_moduli = true;
    ap.omega3_small = s.o3;
    ap.omega4_small = s.o4;
    ap.omega6_small = s.o6;
    ap.omega7_small = s.o7;
    ap.a_small = s.a;
  }
  return ap;
}

Pipeline compute_pipeline(double log_x0, const PipelineOptions& opt) {
  if (!(log_x0 >= 10.0))
    throw DomainError(fmt::format("constants need log x0 >= 10, got {}", log_x0));
  Pipeline p;
  p.log_x0 = log_x0;
  p.profile = opt.profile;

  KappaParams kappa;
  auto policy = KappaPolicy::strict;
  if (opt.kappa) {
    kappa = *opt.kappa;
    p.kappa_source = "given";
  } else if (auto row = published_kappa(log_x0); row && opt.profile == Profile::published) {
    kappa = *row;
    policy = KappaPolicy::as_printed;
    p.kappa_source = "table";
  } else {
    kappa = optimize_kappa(log_x0, opt.profile).kappa;
    p.kappa_source = "optimized";
  }
  p.si = short_interval_constants(log_x0, kappa, opt.profile, policy);

  if (opt.small_moduli && log_x0 >= small_moduli_log_x0_min()) {
    p.soz_small = soz_constants_small(log_x0, opt.omega, opt.profile);
    p.soz = *p.soz_small;
    p.tp = twisted_psi_constants_small(log_x0, *p.soz_small, p.si);
  } else {
    p.soz = soz_constants(log_x0, opt.profile);
    p.tp = twisted_psi_constants(log_x0, p.soz, p.si);
  }
  p.ap = ap_constants(log_x0, p.tp);
  return p;
}

}  // namespace apb
