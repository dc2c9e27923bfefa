#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace apb {

struct SieveOptions {
  std::size_t segment_bytes = std::size_t{1} << 22;  // one byte per odd number
  unsigned threads = 1;
};

// primes <= n, plain sieve
std::vector<std::uint32_t> simple_primes(std::uint32_t n);
// flags[i] = 1 iff i is prime, 0 <= i <= n; monolithic odd/even sieve
std::vector<std::uint8_t> prime_flags(std::uint64_t n);

// Primes in [lo, hi], delivered in ascending blocks (one per segment).
using PrimeVisitor = std::function<void(const std::uint64_t* primes, std::size_t n)>;
void sieve_primes(std::uint64_t lo, std::uint64_t hi, const PrimeVisitor& visit,
                  const SieveOptions& opts = {});
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi,
                                          const SieveOptions& opts = {});
std::uint64_t prime_pi(std::uint64_t n, const SieveOptions& opts = {});

// p^k with k >= 2 in [lo, hi], ascending
struct PrimePower {
  std::uint64_t n;
  std::uint64_t p;
};
std::vector<PrimePower> proper_prime_powers(std::uint64_t lo, std::uint64_t hi);

std::uint64_t isqrt(std::uint64_t n);
std::uint64_t iroot(std::uint64_t n, int k);  // floor(n^(1/k))
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

struct APCounts {
  double x = 0;
  std::uint64_t q = 1, a = 0;
  std::uint64_t pi = 0;
  double theta = 0;  // sum of log p
  double psi = 0;    // sum of Lambda(n)
};

// q = 1 gives the plain pi, theta, psi
APCounts ap_counts(double x, std::uint64_t q, std::uint64_t a, const SieveOptions& opts = {});
// trial-division oracle, for small x
APCounts ap_counts_naive(double x, std::uint64_t q, std::uint64_t a);
// sum of Lambda(n) over n <= x with gcd(n, q) > 1
double shared_factor_psi(double x, std::uint64_t q);

// One sieve pass giving counts at every (checkpoint, q, a), gcd(a, q) = 1.
class APCountGrid {
 public:
  const std::vector<double>& checkpoints() const { return xs_; }
  const std::vector<std::uint64_t>& moduli() const { return qs_; }
  const APCounts& at(std::size_t checkpoint, std::uint64_t q, std::uint64_t a) const;

 private:
  friend APCountGrid ap_count_grid(std::vector<double>, std::vector<std::uint64_t>,
                                   const SieveOptions&);
  std::vector<double> xs_;
  std::vector<std::uint64_t> qs_;
  std::vector<std::size_t> offset_;  // start of modulus j inside one checkpoint row
  std::size_t row_ = 0;
  std::vector<APCounts> cells_;
};
APCountGrid ap_count_grid(std::vector<double> xs, std::vector<std::uint64_t> qs,
                          const SieveOptions& opts = {});

// sum of Lambda(n) over lo < n <= hi
double psi_window(double lo, double hi, const SieveOptions& opts = {});
// psi(x + sqrt(x) log x) - psi(x) - sqrt(x) log x
double short_interval_psi_delta(double x, const SieveOptions& opts = {});
// sum over n <= x of Lambda(n) (x - n)
double psi1_plain(double x, const SieveOptions& opts = {});

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

// Character mod q with Conrey label `index`. Values are stored as
// exponents e(n) of exp(2 pi i e / phi(q)); -1 where gcd(n, q) > 1.
class DirichletCharacter {
 public:
  std::uint64_t modulus() const { return q_; }
  std::uint64_t index() const { return index_; }
  std::uint64_t phi() const { return phi_; }
  std::int32_t exponent(std::uint64_t n) const { return exps_[n % q_]; }
  std::complex<double> operator()(std::uint64_t n) const;
  int parity() const { return parity_; }  // a_chi
  bool is_principal() const { return index_ % q_ == 1 % q_; }
  bool is_primitive() const { return conductor_ == q_; }
  bool is_real() const { return order_ <= 2; }
  std::uint64_t conductor() const { return conductor_; }
  std::uint64_t order() const { return order_; }
  // the primitive character inducing this one
  DirichletCharacter primitive() const;

 private:
  friend std::vector<DirichletCharacter> build_characters(std::uint64_t,
                                                          const std::vector<std::uint64_t>&);
  std::uint64_t q_ = 1, index_ = 1, phi_ = 1, conductor_ = 1, order_ = 1;
  int parity_ = 0;
  std::vector<std::int32_t> exps_;
};

// exp(2 pi i e / m), exact at multiples of m/4
std::complex<double> root_of_unity(std::uint64_t e, std::uint64_t m);

DirichletCharacter make_character(std::uint64_t q, std::uint64_t index);
// all phi(q) characters mod q, ordered by Conrey index
std::vector<DirichletCharacter> character_table(std::uint64_t q);

enum class TwistedKind { psi, theta, psi1 };
std::complex<double> twisted_sum(double x, const DirichletCharacter& chi, TwistedKind kind,
                                 const SieveOptions& opts = {});

}  // namespace apb
