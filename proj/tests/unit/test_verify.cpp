#include <cmath>

#include "apbounds/errors.hpp"
#include "apbounds/verify.hpp"
#include "apbounds/zerosum.hpp"
#include "doctest.h"

using namespace apb;

namespace {
const ZeroTable& zeta10k() {
  static const ZeroTable t =
      load_zero_table(std::string(APB_TEST_DATA) + "/zeta_zeros_10k.txt", ZeroKind::zeta);
  return t;
}
const Pipeline& row10() {
  static const Pipeline p = compute_pipeline(10);
  return p;
}
}  // namespace

TEST_CASE("BoundReport bookkeeping") {
  BoundReport r;
  r.check_name = "demo";
  r.add({10, 3, 1, "a", 1, 2});
  r.add({20, 3, 2, "b", 3, 2});
  r.add({30, 3, 1, "c", 1, -1}, true);
  r.add({40, 3, 1, "d", 1, -1});
  CHECK(r.samples.size() == 4);
  CHECK(r.samples[0].margin == 1);
  CHECK(r.violations == 2);
  CHECK(r.skipped == 1);
  CHECK(r.samples[2].skipped);
  CHECK_FALSE(r.passed());
  CHECK(r.min_margin() == -2);
}

TEST_CASE("report serialisation") {
  BoundReport r;
  r.check_name = "round trip";
  r.notes.push_back({"k", "v"});
  r.add({1e8, 3, 1, "pi", 12.5, 40.25});
  r.add({2e8, 3, 2, "psi", 3, -1}, true);
  r.add({3e8, 5, 4, "theta", 7, 6});
  r.add({4e8, 5, 4, "nan", NAN, 1});
  const auto j = to_json(r);
  const auto back = report_from_json(j);
  CHECK(back.check_name == r.check_name);
  CHECK(back.notes == r.notes);
  REQUIRE(back.samples.size() == r.samples.size());
  CHECK(back.violations == r.violations);
  CHECK(back.skipped == r.skipped);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.samples[i].x == r.samples[i].x);
    CHECK(back.samples[i].lhs == r.samples[i].lhs);
    CHECK(back.samples[i].margin == r.samples[i].margin);
    CHECK(back.samples[i].label == r.samples[i].label);
  }
  CHECK(std::isnan(back.samples[3].lhs));
  CHECK(to_json(back) == j);
  CHECK_THROWS_AS(report_from_json("{"), ParseError);
  CHECK_THROWS_AS(report_from_json("{\"samples\": []}"), ParseError);

  const auto md = to_markdown(r, 2);
  CHECK(md.find("**FAIL**") != std::string::npos);
  CHECK(md.find("VIOLATION") != std::string::npos);
  CHECK(md.find("more rows omitted") != std::string::npos);
  // the violation is listed first
  CHECK(md.find("theta") < md.find("| pi |"));
}

TEST_CASE("lemma soundness on the shipped table") {
  const auto& z = zeta10k();
  const auto bpt = verify_bpt(z, canonical_weights(), random_ranges(z, 20, 1));
  CHECK(bpt.samples.size() == 60);
  CHECK(bpt.passed());
  CHECK(random_ranges(z, 5, 9) == random_ranges(z, 5, 9));
  for (auto [U, V] : random_ranges(z, 50, 3)) {
    CHECK(U >= 2 * 3.141592653589793);
    CHECK(U <= V);
    CHECK(V <= 1e3);
  }
  for (auto [U, V] : random_ranges(z, 50, 3, 1e9)) CHECK(V <= z.max_height);
  CHECK(verify_bpt(z, canonical_weights(), random_ranges(z, 20, 2, 1e4)).passed());
  const auto cnt = verify_count_remainder(z, 100);
  CHECK(cnt.samples.size() == 100);
  CHECK(cnt.passed());
  const auto tail = verify_tail(z, 20);
  CHECK(tail.passed());
  CHECK_THROWS_AS(verify_count_remainder(z, 10, 15, 2e4), CoverageError);
  ZeroTable d;
  d.kind = ZeroKind::dirichlet;
  CHECK_THROWS_AS(verify_tail(d), PreconditionError);
}

TEST_CASE("psi1 explicit formula residual") {
  const auto& z = zeta10k();
  CHECK(psi1_truncation_tau(100, 1e4) == doctest::Approx(2 * 1000 * tail_inverse_square(1e4)));
  // tau shrinks with T
  CHECK(psi1_truncation_tau(500, 5000) > psi1_truncation_tau(500, 1e4));
  const auto r = verify_psi1_explicit(z, {100, 500, 1000}, 1e4);
  CHECK(r.passed());
  const double res = psi1_residual(z, 500, 1e4);
  CHECK(res == doctest::Approx(1.988479).epsilon(1e-5));
  CHECK_THROWS_AS(psi1_residual(z, 500, 2e4), CoverageError);
}

TEST_CASE("short interval check") {
  const auto& si = row10().si;
  const double x0 = std::exp(10.0);
  CHECK_THROWS_AS(verify_short_interval(si, {x0 / 2}), PreconditionError);
  // rhs is negative at x0 itself, so the sample is skipped
  const auto r = verify_short_interval(si, {x0});
  CHECK(r.skipped == 1);
  CHECK(r.violations == 0);
  const auto big = verify_short_interval(si, {1e8, 5e8});
  CHECK(big.passed());
  CHECK(big.skipped == 0);
}

TEST_CASE("progression bounds at a single point") {
  const auto r = verify_ap_bounds(row10(), 3, 1, {1e8});
  CHECK(r.passed());
  CHECK(r.samples.size() == 4);
  for (const auto& s : r.samples) {
    CHECK(s.a == 1);
    CHECK_FALSE(s.skipped);
  }
  CHECK_THROWS_AS(verify_ap_bounds(row10(), 6, 2, {1e8}), DomainError);
  CHECK_THROWS_AS(verify_ap_bounds(row10(), 3, 1, {1e3}), PreconditionError);
}

TEST_CASE("twisted bounds") {
  const auto r = verify_twisted_bounds(row10(), 5, {1e7, 1e8});
  CHECK(r.samples.size() == 2 * 4 * 2);
  CHECK(r.passed());
}

TEST_CASE("baseline comparison") {
  const auto c = compute_pipeline(500);
  const auto r = compare_gm_baseline(c, 3, {std::exp(500.0), std::exp(600.0)});
  CHECK(r.comparison_only);
  CHECK(r.passed());
  for (const auto& s : r.samples) CHECK(s.margin > 0);
  CHECK(to_markdown(r).find("comparison only") != std::string::npos);
}

TEST_CASE("log grid") {
  const auto g = log_grid(10, 1e5, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == 10);
  CHECK(g.back() == doctest::Approx(1e5));
  CHECK(g[1] == doctest::Approx(100));
  CHECK_THROWS_AS(log_grid(10, 1, 5), DomainError);
}
