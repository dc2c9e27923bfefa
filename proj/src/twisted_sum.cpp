#include <cmath>

#include <fmt/format.h>

#include "apbounds/arith.hpp"
#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"

namespace apb {

std::complex<double> twisted_sum(double x, const DirichletCharacter& chi, TwistedKind kind,
                                 const SieveOptions& opts) {
  if (!std::isfinite(x) || x > 1e13)
    throw DomainError(fmt::format("twisted_sum: x = {} out of range", x));
  if (x < 2) return {0.0, 0.0};
  const auto N = static_cast<std::uint64_t>(std::floor(x));
  // one bin per exponent; values are attached only when the bins are combined
  std::vector<CompensatedSum> bins(chi.phi());
  auto add = [&](std::uint64_t n, std::uint64_t p) {
    const auto e = chi.exponent(n);
    if (e < 0) return;
    const double lp = std::log(static_cast<double>(p));
    bins[e] += kind == TwistedKind::psi1 ? lp * (x - static_cast<double>(n)) : lp;
  };
  sieve_primes(
      2, N,
      [&](const std::uint64_t* p, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) add(p[i], p[i]);
      },
      opts);
  if (kind != TwistedKind::theta)
    for (const auto& pp : proper_prime_powers(2, N)) add(pp.n, pp.p);

  CompensatedSum re, im;
  for (std::uint64_t e = 0; e < bins.size(); ++e) {
    const double v = bins[e].value();
    if (v == 0.0) continue;
    const auto w = root_of_unity(e, chi.phi());
    re += v * w.real();
    im += v * w.imag();
  }
  return {re.value(), im.value()};
}

}  // namespace apb
