#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "apbounds/arith.hpp"
#include "apbounds/errors.hpp"

namespace apb {
namespace {

constexpr std::uint64_t kMaxFactorizable = std::uint64_t{1} << 50;
constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 25;

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

bool is_primitive_root(std::uint64_t g, std::uint64_t p) {
  for (const auto& [r, k] : factorize(p - 1)) {
    (void)k;
    if (powmod(g, (p - 1) / r, p) == 1) return false;
  }
  return true;
}

// least primitive root mod p that is also one mod p^2
std::uint64_t primitive_root(std::uint64_t p) {
  std::uint64_t g = 2;
  while (!is_primitive_root(g, p)) ++g;
  if (powmod(g, p - 1, p * p) == 1) g += p;
  return g;
}

// One cyclic factor of (Z/qZ)*: discrete logs of residues mod pk.
struct Cyclic {
  std::uint64_t pk;
  std::uint64_t order;
  std::vector<std::int64_t> log;  // -1 for non-units
};

std::vector<Cyclic> cyclic_factors(std::uint64_t q) {
  std::vector<Cyclic> out;
  for (const auto& [p, k] : factorize(q)) {
    std::uint64_t pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    if (p == 2) {
      if (k == 1) continue;
      Cyclic a{pk, 2, std::vector<std::int64_t>(pk, -1)};
      for (std::uint64_t t = 1; t < pk; t += 2) a.log[t] = (t % 4 == 3);
      out.push_back(std::move(a));
      if (k == 2) continue;
      Cyclic b{pk, pk / 4, std::vector<std::int64_t>(pk, -1)};
      std::uint64_t v = 1;
      for (std::uint64_t e = 0; e < pk / 4; ++e) {
        b.log[v] = static_cast<std::int64_t>(e);
        b.log[pk - v] = static_cast<std::int64_t>(e);
        v = v * 5 % pk;
      }
      out.push_back(std::move(b));
      continue;
    }
    const std::uint64_t phi = pk / p * (p - 1);
    Cyclic c{pk, phi, std::vector<std::int64_t>(pk, -1)};
    const std::uint64_t g = primitive_root(p);
    std::uint64_t v = 1;
    for (std::uint64_t e = 0; e < phi; ++e) {
      c.log[v] = static_cast<std::int64_t>(e);
      v = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v) * g % pk);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  if (n > kMaxFactorizable)
    throw ResourceError(fmt::format("factorize: {} is too large for trial division", n));
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    int k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k) out.push_back({d, k});
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (const auto& [p, k] : factorize(n)) {
    (void)k;
    r = r / p * (p - 1);
  }
  return r;
}

std::complex<double> root_of_unity(std::uint64_t e, std::uint64_t m) {
  e %= m;
  if (4 * e % m == 0) {
    switch (4 * e / m) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double t = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(m);
  return {std::cos(t), std::sin(t)};
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
  const auto e = exponent(n);
  if (e < 0) return {0.0, 0.0};
  return root_of_unity(static_cast<std::uint64_t>(e), phi_);
}

std::vector<DirichletCharacter> build_characters(std::uint64_t q,
                                                 const std::vector<std::uint64_t>& indices) {
  const auto cyc = cyclic_factors(q);
  const std::uint64_t phi = euler_phi(q);
  if (phi > static_cast<std::uint64_t>(INT32_MAX))
    throw ResourceError(fmt::format("characters mod {}: phi(q) too large", q));
  if (q * indices.size() > kMaxTableEntries)
    throw ResourceError(fmt::format("characters mod {}: table of {} x {} values is too large", q,
                                    indices.size(), q));
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d <= q; ++d)
    if (q % d == 0) divisors.push_back(d);

  std::vector<DirichletCharacter> out;
  out.reserve(indices.size());
  for (std::uint64_t m : indices) {
    DirichletCharacter c;
    c.q_ = q;
    c.index_ = m;
    c.phi_ = phi;
    c.exps_.assign(q, -1);
    std::uint64_t g = phi;
    for (std::uint64_t n = 0; n < q; ++n) {
      if (gcd(n, q) != 1) continue;
      std::uint64_t e = 0;
      for (const auto& f : cyc) {
        const auto lm = static_cast<std::uint64_t>(f.log[m % f.pk]);
        const auto ln = static_cast<std::uint64_t>(f.log[n % f.pk]);
        e += (lm * ln % f.order) * (phi / f.order);
      }
      e %= phi;
      c.exps_[n] = static_cast<std::int32_t>(e);
      g = std::gcd(g, e);
    }
    c.order_ = phi / g;
    c.parity_ = (q >= 3 && c.exps_[q - 1] != 0) ? 1 : 0;
    for (std::uint64_t d : divisors) {
      bool trivial = true;
      for (std::uint64_t n = 1; n < q && trivial; n += d)
        if (c.exps_[n] > 0) trivial = false;
      if (trivial) {
        c.conductor_ = d;
        break;
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

DirichletCharacter make_character(std::uint64_t q, std::uint64_t index) {
  if (q == 0) throw DomainError("make_character: q must be positive");
  if (gcd(index % q, q) != 1)
    throw DomainError(fmt::format("make_character: gcd({}, {}) > 1", index, q));
  return build_characters(q, {index % q == 0 ? 1 : index % q})[0];
}

std::vector<DirichletCharacter> character_table(std::uint64_t q) {
  if (q < 3) throw DomainError(fmt::format("character_table: requires q >= 3, got {}", q));
  std::vector<std::uint64_t> idx;
  for (std::uint64_t m = 1; m < q; ++m)
    if (gcd(m, q) == 1) idx.push_back(m);
  return build_characters(q, idx);
}

DirichletCharacter DirichletCharacter::primitive() const {
  const std::uint64_t d = conductor_;
  if (d == q_) return *this;
  const std::uint64_t phi_d = euler_phi(d);
  for (std::uint64_t m = 1; m <= d; ++m) {
    if (gcd(m % d, d) != 1) continue;
    auto c = build_characters(d, {d == 1 ? 1 : m})[0];
    bool same = true;
    for (std::uint64_t n = 1; n < q_ && same; ++n) {
      if (exps_[n] < 0) continue;
      same = static_cast<std::uint64_t>(exps_[n]) * phi_d ==
             static_cast<std::uint64_t>(c.exps_[n % d]) * phi_;
    }
    if (same) return c;
  }
  throw ContractError(fmt::format("no inducing character for ({}, {})", q_, index_));
}

}  // namespace apb
