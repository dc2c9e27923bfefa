#include <algorithm>
#include <cmath>
#include <future>
#include <vector>

#include <fmt/format.h>

#include "apbounds/arith.hpp"
#include "apbounds/errors.hpp"
#include "apbounds/kernels.hpp"

namespace apb {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::uint64_t iroot(std::uint64_t n, int k) {
  if (k == 1) return n;
  if (k == 2) return isqrt(n);
  auto pow_le = [n, k](std::uint64_t r) {
    unsigned __int128 v = 1;
    for (int i = 0; i < k; ++i) {
      v *= r;
      if (v > n) return false;
    }
    return true;
  };
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<double>(n), 1.0 / k));
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::vector<std::uint32_t> simple_primes(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<std::uint8_t> comp(n + 1, 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (comp[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) comp[j] = 1;
  }
  return out;
}

std::vector<std::uint8_t> prime_flags(std::uint64_t n) {
  if (n > (std::uint64_t{1} << 34)) throw ResourceError("prime_flags: n too large");
  std::vector<std::uint8_t> f(n + 1, 1);
  f[0] = 0;
  if (n >= 1) f[1] = 0;
  for (std::uint64_t i = 2; i * i <= n; ++i)
    if (f[i])
      for (std::uint64_t j = i * i; j <= n; j += i) f[j] = 0;
  return f;
}

namespace {

struct Segment {
  std::uint64_t first_odd;  // number represented by byte 0
  std::size_t len;
};

// primes in one odd-only segment, clipped to [lo, hi]
std::vector<std::uint64_t> sieve_segment(const Segment& s, const std::vector<std::uint32_t>& base,
                                         std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint8_t> comp(s.len, 0);
  const std::uint64_t last = s.first_odd + 2 * (s.len - 1);
  for (std::size_t i = 1; i < base.size(); ++i) {  // base[0] == 2
    const std::uint64_t p = base[i];
    if (p * p > last) break;
    std::uint64_t m = std::max(p * p, (s.first_odd + p - 1) / p * p);
    if (m % 2 == 0) m += p;
    for (std::uint64_t j = (m - s.first_odd) / 2; j < s.len; j += p) comp[j] = 1;
  }
  if (s.first_odd == 1) comp[0] = 1;
  std::vector<std::uint32_t> idx(s.len);
  const std::size_t n = kernels::active().collect_zero(comp.data(), s.len, idx.data());
  std::vector<std::uint64_t> out;
  out.reserve(n + 1);
  if (lo <= 2 && hi >= 2 && s.first_odd <= 3) out.push_back(2);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t v = s.first_odd + 2 * std::uint64_t{idx[i]};
    if (v >= lo && v <= hi) out.push_back(v);
  }
  return out;
}

}  // namespace

void sieve_primes(std::uint64_t lo, std::uint64_t hi, const PrimeVisitor& visit,
                  const SieveOptions& opts) {
  if (hi < 2 || lo > hi) return;
  if (hi > (std::uint64_t{1} << 62)) throw ResourceError("sieve_primes: hi too large");
  if (opts.segment_bytes < 64 || opts.segment_bytes > (std::size_t{1} << 31))
    throw DomainError(fmt::format("sieve_primes: bad segment size {}", opts.segment_bytes));
  lo = std::max<std::uint64_t>(lo, 2);
  const auto base = simple_primes(static_cast<std::uint32_t>(isqrt(hi)) + 1);

  std::vector<Segment> segs;
  std::uint64_t start = (lo <= 3) ? 1 : (lo % 2 ? lo : lo - 1);
  while (start <= hi) {
    const std::uint64_t n = (hi - start) / 2 + 1;
    const std::size_t len = static_cast<std::size_t>(std::min<std::uint64_t>(n, opts.segment_bytes));
    segs.push_back({start, len});
    start += 2 * static_cast<std::uint64_t>(len);
  }
  const unsigned threads = std::max(1u, opts.threads);
  for (std::size_t i = 0; i < segs.size(); i += threads) {
    const std::size_t end = std::min(segs.size(), i + threads);
    if (threads == 1) {
      const auto ps = sieve_segment(segs[i], base, lo, hi);
      if (!ps.empty()) visit(ps.data(), ps.size());
      continue;
    }
    std::vector<std::future<std::vector<std::uint64_t>>> jobs;
    for (std::size_t j = i; j < end; ++j)
      jobs.push_back(std::async(std::launch::async, sieve_segment, std::cref(segs[j]),
                                std::cref(base), lo, hi));
    for (auto& j : jobs) {
      const auto ps = j.get();
      if (!ps.empty()) visit(ps.data(), ps.size());
    }
  }
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi,
                                          const SieveOptions& opts) {
  std::vector<std::uint64_t> out;
  sieve_primes(
      lo, hi, [&out](const std::uint64_t* p, std::size_t n) { out.insert(out.end(), p, p + n); },
      opts);
  return out;
}

std::uint64_t prime_pi(std::uint64_t n, const SieveOptions& opts) {
  std::uint64_t c = 0;
  sieve_primes(2, n, [&c](const std::uint64_t*, std::size_t k) { c += k; }, opts);
  return c;
}

std::vector<PrimePower> proper_prime_powers(std::uint64_t lo, std::uint64_t hi) {
  std::vector<PrimePower> out;
  if (hi < 4 || lo > hi) return out;
  const auto ps = simple_primes(static_cast<std::uint32_t>(isqrt(hi)));
  for (std::uint64_t p : ps) {
    unsigned __int128 v = std::uint64_t{p} * p;
    while (v <= hi) {
      if (v >= lo) out.push_back({static_cast<std::uint64_t>(v), p});
      v *= p;
    }
  }
  std::sort(out.begin(), out.end(), [](const PrimePower& a, const PrimePower& b) { return a.n < b.n; });
  return out;
}

}  // namespace apb
