#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace apb {

// Two evaluation profiles. "published" reproduces the printed tables,
// including the places where they differ from the printed formulas;
// "stated" follows the formulas as written. See README.
enum class Profile { published, stated };

std::string_view to_string(Profile p);
Profile parse_profile(std::string_view s);

struct ProfileRules {
  bool tanh_sinh_quadrature;   // single-panel tanh-sinh vs adaptive Gauss-Kronrod
  double sigma4_constant;      // additive constant inside the l0 bracket
  bool clamp_omega1;           // max{Omega1, 0} in Omega3
  bool clamp_small_omega1;     // max{~Omega1, 0} in ~Omega3
  std::optional<double> small_k1_anchor;  // log x0 whose ~k1 feeds sigma6
};
const ProfileRules& rules(Profile p);

inline constexpr double kOmegaDefault = 21.664472;
inline constexpr double kTwoN57 = 11.27041;     // 2N(5/7, chi) < 0.94873 log q + 11.27041
inline constexpr double kTwoN57LogQ = 0.94873;
inline constexpr double kKappa2Floor = 1.74663;
inline constexpr double kThetaPsiGap = 1.44270;
inline constexpr double kSmallModuliMaxQ = 10000.0;
double small_moduli_log_x0_min();  // log(1.05e7)

struct SozConstants {
  double log_x0 = 0.0;
  double nu1 = 0, nu2 = 0, nu3 = 0, nu4 = 0;
  double f1 = 0, f2 = 0, f3 = 0, f4 = 0, f5 = 0;
  double k1 = 0, k2 = 0;
  bool small_moduli = false;
  std::optional<double> nu1_small, nu2_small, f4_small, f5_small, k1_small, k2_small;
  double omega = kOmegaDefault;
  Profile profile = Profile::published;
};

SozConstants soz_constants(double log_x0, Profile p = Profile::published);
SozConstants soz_constants_small(double log_x0, double omega = kOmegaDefault,
                                 Profile p = Profile::published);

// f1 and f2 of the zero-sum theorem as functions of log x
double soz_f1(double log_x);
double soz_f2(double log_x);

struct KappaParams {
  double k0 = 0, k1 = 0, k2 = 0;
  // k2 = max{1.74663, k0 k1}
  static KappaParams from(double k0, double k1);
};
// strict: 0 < k0 < 1, k1 > 0, k2 >= max{1.74663, k0 k1}.
// as_printed: only positivity and k0 < 1, for evaluating table rows
// that do not satisfy k2 >= k0 k1.
enum class KappaPolicy { strict, as_printed };
void validate(const KappaParams& k, KappaPolicy policy = KappaPolicy::strict);
bool satisfies_strict(const KappaParams& k);

struct ShortIntervalConstants {
  double log_x0 = 0.0;
  KappaParams kappa;
  std::array<double, 8> l{};  // l0 .. l7
  double k3 = 0, k4 = 0;
  double alpha1 = 0, alpha2 = 0, beta1 = 0, beta2 = 0;
  double l7_argmax_log_x = 0;  // where the sup of l7 over [x0, x0 e^10] sits
  Profile profile = Profile::published;
};

ShortIntervalConstants short_interval_constants(double log_x0, const KappaParams& kappa,
                                                Profile p = Profile::published,
                                                KappaPolicy policy = KappaPolicy::strict);
// k3 alone, closed form (no quadrature); +inf outside the admissible region
double short_interval_k3(double log_x0, const KappaParams& kappa,
                         Profile p = Profile::published);

struct KappaSearch {
  KappaParams kappa;
  double k3 = 0;
  int evaluations = 0;
  bool converged = false;
};
KappaSearch optimize_kappa(double log_x0, Profile p = Profile::published);

// Table rows (log x0 -> kappa) printed with the short-interval constants
struct KappaRow {
  double log_x0;
  KappaParams kappa;
};
const std::vector<KappaRow>& published_kappa_rows();
std::optional<KappaParams> published_kappa(double log_x0);

double g2(double q);
// the q < 1e30 branch evaluated at q (used for the limit q -> 1e30 from below)
double g2_below(double q);
double c_diff_bound(double x, int a_chi);
// sum over m >= 1 of x^(1-2m-a) / ((2m+a)(2m-1+a)), closed form, x > 1
double trivial_zero_series(double x, int a_chi);

struct TwistedPsiConstants {
  double log_x0 = 0.0;
  std::array<double, 2> g2_regimes{};  // g2 at 1e30 from below / above
  double sigma1 = 0, sigma2 = 0, sigma3 = 0, sigma4 = 0, sigma5 = 0;
  double k5 = 0, k6 = 0;
  double omega0 = 0, omega1 = 0, omega2 = 0;
  bool small_moduli = false;
  std::optional<double> sigma6, sigma7, omega0_small, omega1_small, omega2_small;
  double k3 = 0, k4 = 0;
  Profile profile = Profile::published;
};

TwistedPsiConstants twisted_psi_constants(double log_x0, const SozConstants& soz,
                                          const ShortIntervalConstants& si);
// soz_small must come from soz_constants_small
TwistedPsiConstants twisted_psi_constants_small(double log_x0, const SozConstants& soz_small,
                                                const ShortIntervalConstants& si);

struct APConstants {
  double log_x0 = 0.0;
  double omega2 = 0, omega3 = 0, omega4 = 0, omega5 = 0, omega6 = 0, omega7 = 0;
  std::array<double, 6> a{};  // a1 .. a6
  bool small_moduli = false;
  std::optional<double> omega3_small, omega4_small, omega6_small, omega7_small;
  std::optional<std::array<double, 6>> a_small;
  Profile profile = Profile::published;
};

APConstants ap_constants(double log_x0, const TwistedPsiConstants& tp);

// Everything at one log x0.
struct Pipeline {
  double log_x0 = 0.0;
  Profile profile = Profile::published;
  SozConstants soz;
  std::optional<SozConstants> soz_small;
  ShortIntervalConstants si;
  TwistedPsiConstants tp;
  APConstants ap;
  std::string kappa_source;  // "table" or "optimized"
};

struct PipelineOptions {
  Profile profile = Profile::published;
  double omega = kOmegaDefault;
  std::optional<KappaParams> kappa;  // default: table row if tabulated, else optimized
  bool small_moduli = true;          // only where log x0 >= log(1.05e7)
};
Pipeline compute_pipeline(double log_x0, const PipelineOptions& opt = {});

enum class BoundKind { psi_chi, theta_chi, psi_ap, theta_ap, pi_ap, principal };
enum class Chain { general, small_moduli };

std::string_view to_string(BoundKind k);
BoundKind parse_bound_kind(std::string_view s);

// Right-hand side of the selected inequality at (x, q).
double evaluate_bounds(BoundKind kind, double x, double q, const Pipeline& c,
                       Chain chain = Chain::general);

// Sum over primes p | q of log p / (p - 1)
double prime_divisor_sum(std::uint64_t q);
double gm_baseline_pi_bound(double x, std::uint64_t q);

}  // namespace apb
