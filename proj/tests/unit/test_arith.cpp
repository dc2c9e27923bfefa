#include <cmath>
#include <numbers>
#include <random>

#include "apbounds/arith.hpp"
#include "apbounds/errors.hpp"
#include "doctest.h"

using namespace apb;

TEST_CASE("sieve basics") {
  CHECK(prime_pi(100) == 25);
  CHECK(prime_pi(1) == 0);
  CHECK(prime_pi(2) == 1);
  CHECK(prime_pi(1'000'000) == 78498);
  CHECK(primes_between(90, 110) == std::vector<std::uint64_t>{97, 101, 103, 107, 109});
  CHECK(primes_between(2, 3) == std::vector<std::uint64_t>{2, 3});
  CHECK(primes_between(3, 3) == std::vector<std::uint64_t>{3});
  CHECK(primes_between(24, 28).empty());
  CHECK(simple_primes(30).size() == 10);
}

TEST_CASE("segmented and monolithic sieves agree") {
  const std::uint64_t n = 3'000'000;
  const auto flags = prime_flags(n);
  for (std::size_t seg : {std::size_t{64}, std::size_t{1000}, std::size_t{1} << 22}) {
    for (unsigned threads : {1u, 3u}) {
      const auto ps = primes_between(1, n, {seg, threads});
      std::vector<std::uint8_t> got(n + 1, 0);
      for (auto p : ps) got[p] = 1;
      CHECK(got == flags);
    }
  }
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    const std::uint64_t lo = rng() % n, hi = std::min(n, lo + rng() % 20000);
    const auto ps = primes_between(lo, hi, {128, 1});
    std::size_t want = 0;
    for (std::uint64_t k = lo; k <= hi; ++k) want += flags[k];
    REQUIRE(ps.size() == want);
    for (auto p : ps) CHECK(flags[p]);
  }
}

TEST_CASE("prime powers and roots") {
  const auto pp = proper_prime_powers(2, 100);
  std::vector<std::uint64_t> ns;
  for (auto& v : pp) ns.push_back(v.n);
  CHECK(ns == std::vector<std::uint64_t>{4, 8, 9, 16, 25, 27, 32, 49, 64, 81});
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(100) == 10);
  CHECK(isqrt(std::uint64_t{1} << 62) == std::uint64_t{1} << 31);
  CHECK(iroot(1'000'000'000'000, 3) == 10000);
  CHECK(iroot(999'999'999'999, 3) == 9999);
}

TEST_CASE("ap_counts examples") {
  const auto c = ap_counts(100, 4, 1);
  CHECK(c.pi == 11);
  CHECK(ap_counts(10, 3, 1).psi == doctest::Approx(std::log(14.0)).epsilon(1e-15));
  const double x = 73.2;
  const auto plain = ap_counts(x, 1, 1);
  CHECK(std::fabs(plain.psi - x) < std::sqrt(x) * std::log(x) * std::log(x) / (8 * std::numbers::pi));
  CHECK(plain.pi == 21);
  CHECK_THROWS_AS(ap_counts(100, 4, 2), DomainError);
  CHECK_THROWS_AS(ap_counts(1, 4, 1), DomainError);
  CHECK_THROWS_AS(ap_counts(100, 0, 1), DomainError);
}

TEST_CASE("ap_counts against the trial-division oracle") {
  // every q <= 30 and residue at a few x
  for (double x : {2.0, 10.5, 1000.0, 100000.0}) {
    for (std::uint64_t q = 1; q <= 30; ++q)
      for (std::uint64_t a = 0; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        CAPTURE(x);
        CAPTURE(q);
        CAPTURE(a);
        const auto s = ap_counts(x, q, a);
        const auto o = ap_counts_naive(x, q, a);
        REQUIRE(s.pi == o.pi);
        CHECK(s.theta == doctest::Approx(o.theta).epsilon(1e-14));
        CHECK(s.psi == doctest::Approx(o.psi).epsilon(1e-14));
        CHECK(0 <= s.theta);
        CHECK(s.theta <= s.psi);
        CHECK(static_cast<double>(s.pi) <= s.psi / std::log(2.0) + 1e-12);
      }
  }
}

TEST_CASE("grid agrees with single queries and the oracle") {
  std::vector<double> xs;
  for (int i = 1; i <= 40; ++i) xs.push_back(2500.0 * i + 0.5);
  std::vector<std::uint64_t> qs;
  for (std::uint64_t q = 1; q <= 30; ++q) qs.push_back(q);
  const auto g = ap_count_grid(xs, qs);
  for (std::size_t c = 0; c < xs.size(); c += 7)
    for (auto q : qs)
      for (std::uint64_t a = 0; a < q; ++a) {
        if (gcd(a, q) != 1) continue;
        const auto& cell = g.at(c, q, a);
        const auto o = ap_counts_naive(xs[c], q, a);
        REQUIRE(cell.pi == o.pi);
        CHECK(cell.theta == doctest::Approx(o.theta).epsilon(1e-14));
        CHECK(cell.psi == doctest::Approx(o.psi).epsilon(1e-14));
      }
  CHECK_THROWS_AS(g.at(0, 31, 1), DomainError);
  CHECK_THROWS_AS(g.at(0, 6, 2), DomainError);
}

TEST_CASE("residue classes partition psi") {
  for (double x : {1000.0, 123457.0}) {
    for (std::uint64_t q : {6u, 12u, 30u, 97u}) {
      double s = shared_factor_psi(x, q);
      for (std::uint64_t a = 1; a < q; ++a)
        if (gcd(a, q) == 1) s += ap_counts(x, q, a).psi;
      CHECK(s == doctest::Approx(ap_counts(x, 1, 0).psi).epsilon(1e-14));
    }
  }
  CHECK(shared_factor_psi(100, 6) == doctest::Approx(6 * std::log(2.0) + 4 * std::log(3.0)));
}

TEST_CASE("short-interval delta and psi windows") {
  const double x = 1e6;
  const double h = std::sqrt(x) * std::log(x);
  double brute = 0;
  for (std::uint64_t n = 1'000'001; n <= static_cast<std::uint64_t>(x + h); ++n) {
    std::uint64_t p = n, m = n;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        p = d;
        break;
      }
    while (m % p == 0) m /= p;
    if (m == 1) brute += std::log(static_cast<double>(p));
  }
  CHECK(short_interval_psi_delta(x) == doctest::Approx(brute - h).epsilon(1e-12));
  // no prime powers in (887, 906]
  CHECK(psi_window(887, 906) == 0.0);
  CHECK(psi_window(887.5, 906.5) - 19 == -19.0);
  CHECK(psi_window(10, 20) + psi_window(20, 30) == doctest::Approx(psi_window(10, 30)));
  CHECK_THROWS_AS(short_interval_psi_delta(1.5), DomainError);
}

TEST_CASE("psi1_plain") {
  CHECK(psi1_plain(4) == doctest::Approx(2 * std::log(2.0) + std::log(3.0)).epsilon(1e-15));
  CHECK(psi1_plain(2) == 0.0);
  // slope between integers is psi
  const double a = psi1_plain(1000.25), b = psi1_plain(1000.75);
  CHECK((b - a) / 0.5 == doctest::Approx(ap_counts(1000, 1, 0).psi).epsilon(1e-10));
  // convex
  double prev = 0;
  for (double t = 2; t < 200; t += 1.0) {
    const double s = psi1_plain(t + 1) - psi1_plain(t);
    CHECK(s >= prev - 1e-9);
    prev = s;
  }
}

TEST_CASE("factorization") {
  CHECK(factorize(360) == std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {3, 2}, {5, 1}});
  CHECK(euler_phi(1) == 1);
  CHECK(euler_phi(36) == 12);
  CHECK(euler_phi(97) == 96);
  CHECK_THROWS_AS(factorize(std::uint64_t{1} << 60), ResourceError);
}

TEST_CASE("character tables") {
  auto t3 = character_table(3);
  REQUIRE(t3.size() == 2);
  CHECK(t3[0].is_principal());
  CHECK(t3[1](2) == std::complex<double>(-1, 0));
  CHECK(t3[1].parity() == 1);
  CHECK(t3[1].is_primitive());
  CHECK(t3[1].conductor() == 3);

  auto t5 = character_table(5);
  CHECK(t5.size() == 4);
  for (const auto& c : t5) {
    std::complex<double> s = 0;
    for (int n = 0; n < 5; ++n) s += c(n);
    if (!c.is_principal()) CHECK(std::abs(s) < 1e-15);
  }

  auto t8 = character_table(8);
  CHECK(t8.size() == 4);
  for (const auto& c : t8) {
    CHECK(c.is_real());
    for (int n = 1; n < 8; n += 2) CHECK(c(n).imag() == 0.0);
  }
  CHECK(t8[0].conductor() == 1);

  CHECK_THROWS_AS(character_table(2), DomainError);
  CHECK_THROWS_AS(make_character(10, 4), DomainError);
}

TEST_CASE("character invariants") {
  for (std::uint64_t q : {3u, 4u, 7u, 9u, 12u, 16u, 24u, 25u, 27u, 32u, 45u, 60u, 64u, 77u, 100u}) {
    CAPTURE(q);
    const auto tab = character_table(q);
    REQUIRE(tab.size() == euler_phi(q));
    int principal = 0, primitive = 0;
    for (const auto& c : tab) {
      principal += c.is_principal();
      primitive += c.is_primitive();
      CHECK(c.parity() == (c(q - 1) == std::complex<double>(-1, 0) ? 1 : 0));
      for (std::uint64_t m = 0; m < q; ++m) {
        CHECK(c(m + q) == c(m));
        const double r = std::abs(c(m));
        CHECK((r == 0.0 ? gcd(m, q) > 1 : std::fabs(r - 1) < 1e-15));
        for (std::uint64_t n = 0; n < q; n += 5) {
          // complete multiplicativity in exponent form
          const auto em = c.exponent(m), en = c.exponent(n), emn = c.exponent(m * n);
          if (em < 0 || en < 0) CHECK(emn < 0);
          else CHECK(static_cast<std::uint64_t>(emn) == (em + en) % c.phi());
        }
      }
      // the inducing character agrees on units
      const auto p = c.primitive();
      CHECK(p.is_primitive());
      CHECK(q % p.modulus() == 0);
      for (std::uint64_t n = 1; n < q; ++n)
        if (gcd(n, q) == 1) CHECK(std::abs(c(n) - p(n)) < 1e-14);
    }
    CHECK(principal == 1);
    // number of primitive characters mod q is the Dirichlet convolution mu * phi
    std::int64_t want = 0;
    for (std::uint64_t d = 1; d <= q; ++d) {
      if (q % d) continue;
      int mu = 1;
      for (const auto& [p, k] : factorize(q / d)) {
        if (k > 1) mu = 0;
        mu = -mu;
      }
      if (q / d == 1) mu = 1;
      want += mu * static_cast<std::int64_t>(euler_phi(d));
    }
    CHECK(primitive == want);
    // column orthogonality
    for (std::uint64_t a = 1; a < q; a += 3) {
      if (gcd(a, q) != 1) continue;
      for (std::uint64_t b = 1; b < q; ++b) {
        if (gcd(b, q) != 1) continue;
        std::complex<double> s = 0;
        for (const auto& c : tab) s += std::conj(c(a)) * c(b);
        CHECK(std::abs(s - (a == b ? double(tab.size()) : 0.0)) < 1e-11);
      }
    }
  }
}

TEST_CASE("twisted sums") {
  CHECK(twisted_sum(1.5, make_character(5, 2), TwistedKind::psi) == std::complex<double>(0, 0));
  // principal character drops only the shared prime powers
  for (std::uint64_t q : {3u, 10u, 30u}) {
    const double x = 5000;
    const auto v = twisted_sum(x, make_character(q, 1), TwistedKind::psi);
    const double dropped = ap_counts(x, 1, 0).psi - v.real();
    CHECK(v.imag() == 0.0);
    CHECK(dropped == doctest::Approx(shared_factor_psi(x, q)).epsilon(1e-12));
    CHECK(dropped <= 1.12 * std::log(double(q)) * std::log(x));
  }
  // orthogonality reconstruction of psi(x; q, a)
  auto reconstruct = [](double x, std::uint64_t q, std::uint64_t a, TwistedKind k) {
    std::complex<double> s = 0;
    const auto tab = character_table(q);
    for (const auto& c : tab) s += std::conj(c(a)) * twisted_sum(x, c, k);
    return s / double(tab.size());
  };
  const auto r = reconstruct(1e4, 7, 3, TwistedKind::psi);
  CHECK(std::fabs(r.real() - ap_counts(1e4, 7, 3).psi) < 1e-9);
  CHECK(std::fabs(r.imag()) < 1e-9);
  CHECK(std::fabs(reconstruct(1e4, 7, 3, TwistedKind::theta).real() - ap_counts(1e4, 7, 3).theta) < 1e-9);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 6; ++i) {
    const std::uint64_t q = 3 + rng() % 98;
    std::uint64_t a = 1 + rng() % (q - 1);
    while (gcd(a, q) != 1) a = 1 + rng() % (q - 1);
    const double x = 2 + static_cast<double>(rng() % 1'000'000);
    CAPTURE(q);
    CAPTURE(a);
    CAPTURE(x);
    const auto s = reconstruct(x, q, a, TwistedKind::psi);
    CHECK(std::fabs(s.real() - ap_counts(x, q, a).psi) < 1e-9 * std::max(1.0, x / 1e4));
  }

  // induced versus primitive
  for (std::uint64_t q : {12u, 45u, 60u}) {
    for (const auto& c : character_table(q)) {
      if (c.is_primitive()) continue;
      const double x = 20000;
      const auto d = twisted_sum(x, c, TwistedKind::psi) - twisted_sum(x, c.primitive(), TwistedKind::psi);
      CHECK(std::abs(d) <= 1.12 * std::log(double(q)) * std::log(x));
    }
  }

  // psi1 by summation matches the integral of psi
  const auto c = make_character(7, 3);
  const auto p1 = twisted_sum(100.5, c, TwistedKind::psi1);
  std::complex<double> integral = 0;
  for (int n = 2; n <= 100; ++n) integral += twisted_sum(n, c, TwistedKind::psi) * (n == 100 ? 0.5 + 0.0 : 1.0);
  CHECK(std::abs(p1 - integral) < 1e-10);
}
