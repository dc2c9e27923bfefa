#include <cmath>
#include <numbers>

#include "reference_tables.hpp"
#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"
#include "doctest.h"

using namespace apb;
using std::numbers::pi;

namespace {

bool close(double got, double want, double abs_tol = 5e-3, double rel_tol = 5e-3) {
  return std::fabs(got - want) <= std::max(abs_tol, rel_tol * std::fabs(want));
}

const Pipeline& row(double L, Profile p = Profile::published) {
  static std::vector<std::pair<std::pair<double, Profile>, Pipeline>> cache;
  for (auto& [k, v] : cache)
    if (k.first == L && k.second == p) return v;
  cache.push_back({{L, p}, compute_pipeline(L, {p})});
  return cache.back().second;
}

}  // namespace

TEST_CASE("soz constants at anchor rows") {
  auto s = soz_constants(10);
  CHECK(s.k1 == doctest::Approx(3.10557).epsilon(2e-6));
  CHECK(s.k2 == doctest::Approx(2.36179).epsilon(2e-6));
  CHECK(s.nu1 > 0);
  s = soz_constants(50);
  CHECK(s.k1 == doctest::Approx(0.5812).epsilon(1e-5));
  CHECK(s.k2 == doctest::Approx(2.22572).epsilon(1e-5));
  s = soz_constants(500);
  CHECK(s.k1 == doctest::Approx(-12.37619).epsilon(1e-6));
  CHECK(s.k2 == doctest::Approx(-61.41291).epsilon(1e-6));

  auto t = soz_constants_small(20);
  CHECK(*t.k1_small == doctest::Approx(1.10685).epsilon(1e-5));
  CHECK(*t.k2_small == doctest::Approx(-1.04564).epsilon(1e-5));
  t = soz_constants_small(small_moduli_log_x0_min());
  CHECK(*t.k1_small == doctest::Approx(1.36974).epsilon(1e-5));
  CHECK(*t.k2_small == doctest::Approx(-1.03762).epsilon(1e-5));
  t = soz_constants_small(500);
  CHECK(*t.k1_small == doctest::Approx(-12.38446).epsilon(1e-6));
  CHECK(*t.k2_small == doctest::Approx(-62.92575).epsilon(1e-6));

  CHECK_THROWS_AS(soz_constants(9.99), DomainError);
  CHECK_THROWS_AS(soz_constants_small(16.0), DomainError);
  CHECK_THROWS_AS(soz_constants_small(20, 0.0), DomainError);
}

TEST_CASE("stated profile resolves the low-zero integrals") {
  // same as published while the single tanh-sinh panel still resolves them
  CHECK(soz_constants(20, Profile::stated).k2 == doctest::Approx(soz_constants(20).k2).epsilon(1e-9));
  // at large x0 the resolved integrals keep k2 near its limit
  const double k2 = soz_constants(500, Profile::stated).k2;
  CHECK(k2 == doctest::Approx(2.22572).epsilon(1e-5));
}

TEST_CASE("f1 and f2 stay below their limits") {
  for (int i = 0; i < 100; ++i) {
    const double L = 10 + 490.0 * i / 99;
    CHECK(soz_f1(L) <= 1 / (8 * pi) + 1e-15);
    CHECK(soz_f2(L) <= 1 / (2 * pi) + 1e-15);
  }
}

TEST_CASE("reference rows: zero-sum constants") {
  for (const auto& r : reference::kSoz) {
    const double L = r[0];
    CAPTURE(L);
    if (L >= small_moduli_log_x0_min()) {
      const auto s = soz_constants_small(L);
      CHECK(close(s.k1, r[1]));
      CHECK(close(s.k2, r[3]));
      CHECK(close(*s.k1_small, r[2]));
      CHECK(close(*s.k2_small, r[4]));
    } else {
      const auto s = soz_constants(L);
      CHECK(close(s.k1, r[1]));
      CHECK(close(s.k2, r[3]));
    }
  }
}

TEST_CASE("reference rows: short-interval constants at printed kappa") {
  for (const auto& r : reference::kShortInterval) {
    CAPTURE(r[0]);
    const KappaParams k{r[1], r[2], r[3]};
    const auto s = short_interval_constants(r[0], k, Profile::published, KappaPolicy::as_printed);
    CHECK(std::fabs(s.k3 - r[4]) <= 5e-3);
    CHECK(std::fabs(s.k4 - r[5]) <= 5e-3 * r[5]);
    CHECK(s.k3 == s.l[5] + s.l[7]);
    CHECK(s.k4 == -s.l[6]);
    CHECK(s.k3 > 0);
    CHECK(s.l7_argmax_log_x == r[0]);
  }
}

TEST_CASE("kappa validation") {
  CHECK_THROWS_AS(validate({0.0, 10, 1.74663}), ValidationError);
  CHECK_THROWS_AS(validate({1.0, 10, 10}), ValidationError);
  CHECK_THROWS_AS(validate({0.1, -1, 1.74663}), ValidationError);
  CHECK_THROWS_AS(validate({0.1, 10, 1.5}), ValidationError);
  CHECK_NOTHROW(validate(KappaParams::from(0.1, 10)));
  CHECK(KappaParams::from(0.1, 10).k2 == 1.74663);
  CHECK(KappaParams::from(0.1, 30).k2 == doctest::Approx(3.0));
  // the printed log x0 = 40 row has kappa2 < kappa0 kappa1
  const KappaParams row40{0.03167, 63.91776, 1.74663};
  CHECK_FALSE(satisfies_strict(row40));
  CHECK_THROWS_AS(short_interval_constants(40, row40), ValidationError);
  CHECK_NOTHROW(short_interval_constants(40, row40, Profile::published, KappaPolicy::as_printed));
  CHECK_THROWS_AS(short_interval_constants(9, KappaParams::from(0.05, 20)), DomainError);
}

TEST_CASE("optimize_kappa") {
  for (const auto& r : reference::kShortInterval) {
    const double L = r[0];
    CAPTURE(L);
    const auto found = optimize_kappa(L);
    CHECK(satisfies_strict(found.kappa));
    CHECK(found.k3 == doctest::Approx(short_interval_k3(L, found.kappa)).epsilon(1e-14));
    const KappaParams printed{r[1], r[2], r[3]};
    if (satisfies_strict(printed)) CHECK(found.k3 <= short_interval_k3(L, printed) + 1e-12);
  }
  const auto a = optimize_kappa(30), b = optimize_kappa(30);
  CHECK(a.k3 == b.k3);
  CHECK(a.kappa.k0 == b.kappa.k0);
  CHECK_THROWS_AS(optimize_kappa(5), DomainError);
}

TEST_CASE("g2 and c_diff_bound") {
  const double l3 = std::log(3.0);
  const double want = 317.501 + 0.593 * std::log(l3) * l3 * l3 + 0.0758 * std::sqrt(3.0) * l3 + 2.751 * l3;
  CHECK(g2(3) == doctest::Approx(want).epsilon(1e-15));
  CHECK(g2(3) == doctest::Approx(320.73483059079234).epsilon(1e-14));
  CHECK_THROWS_AS(g2(2), DomainError);
  // branch switch
  const double l30 = std::log(1e30);
  CHECK(g2(1e30) == doctest::Approx(1.777 + 0.593 * std::log(l30) * l30 * l30 + 0.000278e15 * l30 + l30));
  CHECK(g2_below(1e30) > g2(1e30));
  double prev = 0;
  for (double q = 3; q < 1e29; q *= 3.7) {
    CHECK(g2(q) >= prev);
    prev = g2(q);
  }

  CHECK(c_diff_bound(std::exp(10.0), 1) == doctest::Approx(4.54470953914784e-5).epsilon(1e-12));
  CHECK(c_diff_bound(std::exp(10.0), 0) == doctest::Approx(11.0673795171564837).epsilon(1e-14));
  CHECK_THROWS_AS(c_diff_bound(100, 0), DomainError);
  CHECK_THROWS_AS(c_diff_bound(std::exp(11.0), 2), DomainError);
}

TEST_CASE("trivial-zero series closed form") {
  for (double x : {2.0, 3.0, 10.0, std::exp(10.0)}) {
    for (int a : {0, 1}) {
      double s = 0;
      for (int m = 1; m <= 40; ++m)
        s += std::pow(x, 1 - 2 * m - a) / ((2 * m + a) * (2 * m - 1 + a));
      CHECK(trivial_zero_series(x, a) == doctest::Approx(s).epsilon(1e-12));
      // the 7e-5 majorant used in c_diff_bound
      if (std::log(x) >= 10) CHECK(std::fabs(trivial_zero_series(x, a)) < 7e-5);
    }
  }
  CHECK(trivial_zero_series(2, 0) == doctest::Approx(0.2616240718822736).epsilon(1e-14));
  CHECK(trivial_zero_series(2, 1) == doctest::Approx(0.04522874755778061).epsilon(1e-12));
}

TEST_CASE("reference rows: twisted constants") {
  for (const auto& r : reference::kTwisted) {
    CAPTURE(r[0]);
    const auto& tp = row(r[0]).tp;
    CHECK(close(tp.k5, r[1]));
    CHECK(close(tp.k6, r[2]));
    CHECK(close(tp.omega0, r[3]));
    CHECK(close(tp.omega1, r[4]));
    CHECK(close(tp.omega2, r[5]));
    CHECK(tp.omega0 == doctest::Approx(tp.k3 + tp.k5).epsilon(1e-15));
    CHECK(tp.omega2 == 1.777 - tp.k4);
    CHECK(tp.omega1 == doctest::Approx(tp.k6 + (0.5 + 1.12 * r[0]) * r[0] / std::exp(r[0] / 2)).epsilon(1e-14));
  }
  // branch selection keys on the sign of k2
  CHECK(row(10).tp.k5 == row(10).tp.sigma4);
  CHECK(row(150).tp.k5 == row(150).tp.sigma5);
  CHECK(row(150).tp.k6 == doctest::Approx(row(150).soz.k2 * std::log(3.0)));
}

TEST_CASE("twisted constants reject mismatched rows") {
  const auto s = soz_constants(20);
  const auto si = short_interval_constants(30, KappaParams::from(0.03579, 52.1484));
  CHECK_THROWS_AS(twisted_psi_constants(20, s, si), ValidationError);
  CHECK_THROWS_AS(twisted_psi_constants_small(20, s, short_interval_constants(20, KappaParams::from(0.0457, 37.77813))),
                  PreconditionError);
}

TEST_CASE("small-moduli twisted constants") {
  const auto& p = row(20);
  REQUIRE(p.tp.small_moduli);
  CHECK(*p.soz.k2_small < 0);
  CHECK(*p.tp.sigma7 == doctest::Approx(*p.soz.k2_small * std::log(3.0)).epsilon(1e-15));
  CHECK(*p.tp.omega2_small == -p.si.k4);
  CHECK(close(*p.tp.omega2_small, -3.15402e6));
  CHECK(close((*p.ap.a_small)[1], -10.80603));
}

TEST_CASE("reference rows: Omega and a constants") {
  for (const auto& r : reference::kOmega) {
    CAPTURE(r[0]);
    const auto& ap = row(r[0]).ap;
    CHECK(close(ap.omega2, r[1]));
    CHECK(close(ap.omega3, r[2]));
    CHECK(close(ap.omega4, r[3]));
    CHECK(close(ap.omega5, r[4]));
    CHECK(close(ap.omega6, r[5]));
    CHECK(close(ap.omega7, r[6]));
  }
  for (const auto& r : reference::kAp) {
    CAPTURE(r[0]);
    const auto& p = row(r[0]);
    const auto& a = p.ap.a;
    for (int i = 0; i < 6; ++i) CHECK(close(a[i], r[i + 1]));
    CHECK(a[4] == p.tp.omega2);
    CHECK(std::fabs(a[2] - (1 + p.tp.omega2) / std::numbers::ln2) <= 1e-12 * std::fabs(a[2]));
    CHECK(std::fabs(a[3] - a[5] - 1.44270) <= 1e-12);
    CHECK(std::fabs(a[1] - 1 / (8 * pi) - a[3] * a[0]) <= 1e-12 * std::max(1.0, std::fabs(a[1])));
  }
  for (const auto& r : reference::kApSmall) {
    CAPTURE(r[0]);
    const auto& p = row(r[0]);
    REQUIRE(p.ap.a_small);
    const auto& a = *p.ap.a_small;
    for (int i = 0; i < 6; ++i) CHECK(close(a[i], r[i + 1]));
    CHECK(a[0] == p.ap.a[0]);
    CHECK(a[4] == -p.si.k4);
  }
}

TEST_CASE("monotone in log x0 across the reference grid") {
  double k1 = INFINITY, k3 = INFINITY, k5 = INFINITY, o0 = INFINITY;
  for (const auto& r : reference::kShortInterval) {
    const auto& p = row(r[0]);
    CHECK(p.soz.k1 <= k1);
    CHECK(p.si.k3 <= k3);
    CHECK(p.tp.k5 <= k5);
    CHECK(p.tp.omega0 <= o0);
    k1 = p.soz.k1;
    k3 = p.si.k3;
    k5 = p.tp.k5;
    o0 = p.tp.omega0;
  }
}

TEST_CASE("stated profile differs only where documented") {
  const auto& pub = row(10);
  const auto st = compute_pipeline(10, {Profile::stated, kOmegaDefault, pub.si.kappa});
  CHECK(st.soz.k1 == doctest::Approx(pub.soz.k1).epsilon(1e-9));
  // l0 bracket constant 2 instead of 1
  CHECK(st.si.l[0] > pub.si.l[0]);
  const auto& k = pub.si.kappa;
  CHECK(st.si.l[0] - pub.si.l[0] ==
        doctest::Approx((0.5 + std::log(k.k2 / k.k0) / 10) / (k.k2 * pi)).epsilon(1e-9));
  CHECK(st.si.k3 > pub.si.k3);
  // Omega1 clamp
  const auto& p150 = row(150);
  CHECK(p150.tp.omega1 < 0);
  CHECK(p150.ap.omega3 == doctest::Approx(p150.tp.omega0 + p150.tp.omega1 / 150 +
                                          0.56 * 150 / std::exp(75.0)));
}

TEST_CASE("evaluate_bounds") {
  const auto& p = row(10);
  const double x0 = std::exp(10.0);
  const double want = (10 / (8 * pi) + p.ap.a[0] * std::log(3.0) / (2 * pi) + p.ap.a[1]) * std::exp(5.0) + p.ap.a[2];
  CHECK(evaluate_bounds(BoundKind::pi_ap, x0, 3, p) == doctest::Approx(want).epsilon(1e-14));
  CHECK(evaluate_bounds(BoundKind::pi_ap, x0, 3, p) ==
        doctest::Approx(-10138.57).epsilon(5e-4));

  const double x = 1e8;
  const double gap = evaluate_bounds(BoundKind::theta_ap, x, 7, p) - evaluate_bounds(BoundKind::psi_ap, x, 7, p);
  CHECK(gap == doctest::Approx(1.44270 * std::sqrt(x) * std::log(x)).epsilon(1e-12));
  const double chi_gap = evaluate_bounds(BoundKind::theta_chi, x, 7, p) - evaluate_bounds(BoundKind::psi_chi, x, 7, p);
  CHECK(chi_gap == doctest::Approx(1.44270 * std::sqrt(x) * std::log(x)).epsilon(1e-12));

  const double L = std::log(73.2);
  CHECK(evaluate_bounds(BoundKind::principal, 73.2, 5, p) ==
        doctest::Approx(std::sqrt(73.2) * L * L / (8 * pi) + 1.12 * std::log(5.0) * L));
  CHECK_THROWS_AS(evaluate_bounds(BoundKind::principal, 73.0, 5, p), PreconditionError);
  CHECK_THROWS_AS(evaluate_bounds(BoundKind::psi_ap, 1e3, 3, p), PreconditionError);
  CHECK_THROWS_AS(evaluate_bounds(BoundKind::psi_ap, 1e8, 30000, p), PreconditionError);
  CHECK_THROWS_AS(evaluate_bounds(BoundKind::psi_ap, 1e8, 2, p), PreconditionError);
  CHECK_THROWS_AS(evaluate_bounds(BoundKind::psi_ap, 1e8, 3, p, Chain::small_moduli), PreconditionError);

  const auto& p20 = row(20);
  CHECK_NOTHROW(evaluate_bounds(BoundKind::psi_ap, 1e9, 30000, p20, Chain::general));
  CHECK_THROWS_AS(evaluate_bounds(BoundKind::psi_ap, 1e9, 20000, p20, Chain::small_moduli), PreconditionError);
  CHECK(evaluate_bounds(BoundKind::psi_ap, 1e9, 5, p20, Chain::small_moduli) <
        evaluate_bounds(BoundKind::psi_ap, 1e9, 5, p20, Chain::general));

  CHECK(parse_bound_kind("pi_ap") == BoundKind::pi_ap);
  CHECK_THROWS_AS(parse_bound_kind("nope"), DomainError);
}

TEST_CASE("GM baseline") {
  CHECK(prime_divisor_sum(3) == doctest::Approx(std::log(3.0) / 2).epsilon(1e-15));
  CHECK(prime_divisor_sum(6) == doctest::Approx(1.242453324894).epsilon(1e-12));
  CHECK(prime_divisor_sum(8) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(prime_divisor_sum(1) == 0.0);
  CHECK_THROWS_AS(gm_baseline_pi_bound(1.5, 3), DomainError);
  CHECK_THROWS_AS(gm_baseline_pi_bound(100, 2), DomainError);
  // shared leading term: difference / sqrt(x) tends to a constant at fixed q
  const auto& p = row(10);
  auto diff = [&](double L) {
    const double x = std::exp(L);
    return (evaluate_bounds(BoundKind::pi_ap, x, 3, p) - gm_baseline_pi_bound(x, 3)) / std::sqrt(x);
  };
  CHECK(std::fabs(diff(400) - diff(600)) < 0.02);
  // published constants at log x0 = 500 beat the baseline at log x = 500
  const auto& p500 = row(500);
  const double x = std::exp(500.0);
  CHECK(evaluate_bounds(BoundKind::pi_ap, x, 3, p500) < gm_baseline_pi_bound(x, 3));
}

TEST_CASE("profile parsing") {
  CHECK(parse_profile("stated") == Profile::stated);
  CHECK(to_string(Profile::published) == "published");
  CHECK_THROWS_AS(parse_profile("x"), DomainError);
}
