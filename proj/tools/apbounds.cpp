// apbounds: constants tables, verification suites, exact counts and bound values.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "apbounds/arith.hpp"
#include "apbounds/constants.hpp"
#include "apbounds/errors.hpp"
#include "apbounds/table.hpp"
#include "apbounds/verify.hpp"
#include "apbounds/zeros.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using namespace apb;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

struct RunConfig {
  std::string profile = "published";
  std::string format = "md";
  int precision = 30;
  double quad_tol = 1e-12;
  std::size_t sieve_segment = std::size_t{1} << 22;
  unsigned threads = 1;

  void validate() const {
    if (precision < 15) throw DomainError(fmt::format("--precision must be >= 15, got {}", precision));
    if (!(quad_tol > 0)) throw DomainError(fmt::format("--quad-tol must be > 0, got {}", quad_tol));
    if (sieve_segment < 64) throw DomainError("--sieve-segment must be >= 64 bytes");
    (void)parse_profile(profile);
    (void)parse_output_format(format);
  }
  Profile prof() const { return parse_profile(profile); }
  OutputFormat fmt() const { return parse_output_format(format); }
  SieveOptions sieve() const { return {sieve_segment, threads}; }
};

std::string zeros_path(const std::string& given) {
  if (!given.empty()) return given;
  if (const char* dir = std::getenv("APBOUNDS_ZEROS_DIR")) {
    for (const char* name : {"zeta_zeros.txt", "zeta_zeros_10k.txt"}) {
      const auto p = fs::path(dir) / name;
      if (fs::exists(p)) return p.string();
    }
    throw PreconditionError(fmt::format(
        "no zeta_zeros.txt in APBOUNDS_ZEROS_DIR={}; pass --zeros FILE. Expected format: {}", dir,
        format_expected(ZeroKind::zeta)));
  }
  throw PreconditionError(fmt::format(
      "this suite needs a zeta zeros file: pass --zeros FILE or set APBOUNDS_ZEROS_DIR. "
      "Expected format: {}",
      format_expected(ZeroKind::zeta)));
}

std::string report_text(const BoundReport& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::json: return to_json(r) + "\n";
    case OutputFormat::md: return to_markdown(r);
    case OutputFormat::csv: {
      std::string out = "x,q,a,check,lhs,rhs,margin,skipped\n";
      for (const auto& s : r.samples)
        out += fmt::format("{},{},{},\"{}\",{},{},{},{}\n", s.x, s.q, s.a, s.label, s.lhs, s.rhs,
                           s.margin, s.skipped ? 1 : 0);
      return out;
    }
  }
  return {};
}

void write_out(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ResourceError(fmt::format("cannot write '{}'", path));
  f << text;
}

struct VerifyArgs {
  std::string suite;
  std::string zeros;
  std::string dirichlet;
  std::string output;
  std::uint64_t q = 0, a = 1;
  double x_min = 0, x_max = 1e8;
  int points = 40;
  int ranges = 50;
  double range_max = 1e3;
  std::uint64_t seed = 1;
  double log_x0 = 10;
  std::string chain = "general";
  double t_trunc = 1e4;
  std::vector<double> xs;
};

Chain parse_chain(const std::string& s) {
  if (s == "general") return Chain::general;
  if (s == "small") return Chain::small_moduli;
  throw DomainError(fmt::format("unknown chain '{}' (general|small)", s));
}

Pipeline pipeline(const RunConfig& cfg, double log_x0) {
  PipelineOptions o;
  o.profile = cfg.prof();
  return compute_pipeline(log_x0, o);
}

std::vector<double> x_grid(const VerifyArgs& v, double lo_default) {
  if (!v.xs.empty()) return v.xs;
  const double lo = v.x_min > 0 ? v.x_min : lo_default;
  return log_grid(lo, v.x_max, v.points);
}

int run_verify(const RunConfig& cfg, const VerifyArgs& v) {
  BoundReport r;
  const auto& s = v.suite;
  if (s == "bpt" || s == "count" || s == "tail" || s == "psi1") {
    const auto z = load_zero_table(zeros_path(v.zeros), ZeroKind::zeta);
    if (s == "bpt")
      r = verify_bpt(z, canonical_weights(), random_ranges(z, v.ranges, v.seed, v.range_max));
    else if (s == "count")
      r = verify_count_remainder(z, v.points < 2 ? 200 : v.points);
    else if (s == "tail")
      r = verify_tail(z, v.points);
    else
      r = verify_psi1_explicit(z, v.xs.empty() ? std::vector<double>{500, 1000, 5000} : v.xs,
                               std::min(v.t_trunc, z.max_height));
  } else if (s == "lehman") {
    if (v.dirichlet.empty())
      throw PreconditionError(fmt::format("lehman needs --dirichlet FILE. Expected format: {}",
                                          format_expected(ZeroKind::dirichlet)));
    const auto tables = load_dirichlet_zeros(v.dirichlet);
    double top = 0;
    for (const auto& t : tables) top = std::max(top, t.max_height);
    std::vector<Range> ranges;
    for (double V : log_grid(1.0, std::max(top, 1.0), v.points)) ranges.push_back({5.0 / 7.0, V});
    r = verify_lehman(tables, {WeightSpec::inverse_square(), WeightSpec::inverse_norm()}, ranges);
  } else if (s == "short") {
    const auto c = pipeline(cfg, v.log_x0);
    r = verify_short_interval(c.si, x_grid(v, std::exp(v.log_x0)), cfg.sieve());
  } else if (s == "ap") {
    const auto c = pipeline(cfg, v.log_x0);
    const auto xs = x_grid(v, std::exp(v.log_x0));
    if (v.q == 0) {
      std::vector<std::uint64_t> qs;
      for (std::uint64_t q = 3; q <= 30; ++q) qs.push_back(q);
      r = verify_ap_bounds(c, ap_count_grid(xs, qs, cfg.sieve()), parse_chain(v.chain));
    } else {
      r = verify_ap_bounds(c, v.q, v.a, xs, parse_chain(v.chain), cfg.sieve());
    }
  } else if (s == "twisted") {
    const auto c = pipeline(cfg, v.log_x0);
    r = verify_twisted_bounds(c, v.q == 0 ? 5 : v.q, x_grid(v, std::exp(v.log_x0)),
                              parse_chain(v.chain), cfg.sieve());
  } else if (s == "gm") {
    const auto c = pipeline(cfg, v.log_x0);
    r = compare_gm_baseline(c, v.q == 0 ? 3 : v.q,
                            v.xs.empty() ? std::vector<double>{std::exp(v.log_x0)} : v.xs);
  } else {
    throw DomainError(
        fmt::format("unknown suite '{}' (bpt|count|tail|psi1|lehman|short|ap|twisted|gm)", s));
  }
  write_out(report_text(r, cfg.fmt()), v.output);
  if (!v.output.empty())
    std::cerr << fmt::format("{}: {} samples, {} violations, {} skipped -> {}\n", r.check_name,
                             r.samples.size(), r.violations, r.skipped, v.output);
  return r.passed() ? kExitOk : kExitViolations;
}

int run_constants(const RunConfig& cfg, const std::string& which, std::vector<double> log_x0s,
                  const std::string& output) {
  if (log_x0s.empty()) log_x0s = default_log_x0_grid();
  std::vector<TableKind> kinds;
  if (which == "all")
    kinds = {TableKind::soz, TableKind::short_interval, TableKind::twisted, TableKind::ap};
  else
    kinds = {parse_table_kind(which)};
  std::string out;
  bool errors = false;
  for (auto k : kinds) {
    const auto t = build_table(k, log_x0s, cfg.prof());
    errors = errors || t.has_errors();
    if (!out.empty()) out += "\n";
    out += render(t, cfg.fmt());
  }
  write_out(out, output);
  if (errors) std::cerr << "some rows could not be computed (see the error column)\n";
  return errors ? kExitError : kExitOk;
}

int run_count(const RunConfig& cfg, double x, std::uint64_t q, std::uint64_t a) {
  const auto c = ap_counts(x, q, a, cfg.sieve());
  if (cfg.fmt() == OutputFormat::json) {
    nlohmann::ordered_json j{{"x", c.x}, {"q", c.q}, {"a", c.a}, {"pi", c.pi}, {"theta", c.theta},
                             {"psi", c.psi}, {"source", "segmented sieve"}};
    std::cout << j.dump(2) << "\n";
  } else if (cfg.fmt() == OutputFormat::csv) {
    std::cout << "x,q,a,pi,theta,psi\n"
              << fmt::format("{},{},{},{},{:.17g},{:.17g}\n", c.x, c.q, c.a, c.pi, c.theta, c.psi);
  } else {
    std::cout << fmt::format("x={} q={} a={}\npi={}\ntheta={:.17g}\npsi={:.17g}\n", c.x, c.q, c.a,
                             c.pi, c.theta, c.psi);
  }
  return kExitOk;
}

int run_bound(const RunConfig& cfg, const std::string& kind, double x, double q, double log_x0,
              const std::string& chain) {
  const auto k = parse_bound_kind(kind);
  const auto ch = parse_chain(chain);
  const auto c = pipeline(cfg, log_x0);
  const double rhs = evaluate_bounds(k, x, q, c, ch);
  const std::string kappa =
      c.kappa_source == "table" ? "printed short-interval row" : "recomputed (optimizer)";
  if (cfg.fmt() == OutputFormat::json) {
    nlohmann::ordered_json j{{"kind", kind},   {"x", x},         {"q", q},
                             {"log_x0", log_x0}, {"chain", chain}, {"profile", cfg.profile},
                             {"kappa", kappa}, {"rhs", rhs}};
    std::cout << j.dump(2) << "\n";
  } else if (cfg.fmt() == OutputFormat::csv) {
    std::cout << "kind,x,q,log_x0,chain,profile,kappa,rhs\n"
              << fmt::format("{},{},{},{},{},{},{},{:.17g}\n", kind, x, q, log_x0, chain,
                             cfg.profile, kappa, rhs);
  } else {
    std::cout << fmt::format(
        "{} at x={} q={}: rhs={:.17g}\n  constants: log x0={} ({} profile, {} chain, kappa {})\n",
        kind, x, q, rhs, log_x0, cfg.profile, chain, kappa);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explicit bounds for primes in arithmetic progressions under GRH"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--profile", cfg.profile, "published (reproduce printed tables) or stated")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "md, csv or json")->capture_default_str();
  app.add_option("--precision", cfg.precision, "decimal digits requested (>= 15)")
      ->capture_default_str();
  app.add_option("--quad-tol", cfg.quad_tol, "quadrature tolerance (> 0)")->capture_default_str();
  app.add_option("--sieve-segment", cfg.sieve_segment, "sieve segment size in bytes")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "sieve worker threads")->capture_default_str();

  auto* constants = app.add_subcommand("constants", "print constants tables");
  std::string which = "all";
  std::vector<double> log_x0s;
  std::string out_path;
  constants->add_option("--which", which, "soz, short-interval, twisted, ap or all")
      ->capture_default_str();
  constants->add_option("--log-x0", log_x0s, "rows (default: the standard grid)");
  constants->add_option("-o,--output", out_path, "write to a file");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  VerifyArgs va;
  verify->add_option("suite", va.suite, "bpt|count|tail|psi1|lehman|short|ap|twisted|gm")->required();
  verify->add_option("--zeros", va.zeros, "zeta zeros file (default: $APBOUNDS_ZEROS_DIR)");
  verify->add_option("--dirichlet", va.dirichlet, "Dirichlet zeros CSV (lehman)");
  verify->add_option("-o,--output", va.output, "write the report to a file");
  verify->add_option("--q", va.q, "modulus (ap: 0 means every q in 3..30)");
  verify->add_option("--a", va.a, "residue (ap)")->capture_default_str();
  verify->add_option("--x-min", va.x_min, "grid start (default e^log_x0)");
  verify->add_option("--x-max", va.x_max, "grid end")->capture_default_str();
  verify->add_option("--x", va.xs, "explicit x values instead of a grid");
  verify->add_option("--points", va.points, "grid points")->capture_default_str();
  verify->add_option("--ranges", va.ranges, "random ranges (bpt)")->capture_default_str();
  verify->add_option("--range-max", va.range_max, "upper end of random ranges (bpt)")
      ->capture_default_str();
  verify->add_option("--seed", va.seed, "seed for random ranges")->capture_default_str();
  verify->add_option("--log-x0", va.log_x0, "constants row")->capture_default_str();
  verify->add_option("--chain", va.chain, "general or small")->capture_default_str();
  verify->add_option("--t-trunc", va.t_trunc, "zero truncation height (psi1)")->capture_default_str();

  auto* count = app.add_subcommand("count", "exact pi, theta, psi in a progression");
  double cx = 0;
  std::uint64_t cq = 1, ca = 0;
  count->add_option("--x", cx, "upper limit")->required();
  count->add_option("--q", cq, "modulus")->capture_default_str();
  count->add_option("--a", ca, "residue")->capture_default_str();

  auto* bound = app.add_subcommand("bound", "evaluate a bound");
  std::string bkind = "pi_ap", bchain = "general";
  double bx = 0, bq = 3, blog = 10;
  bound->add_option("--kind", bkind, "psi_chi|theta_chi|psi_ap|theta_ap|pi_ap|principal")
      ->capture_default_str();
  bound->add_option("--x", bx, "x")->required();
  bound->add_option("--q", bq, "modulus")->capture_default_str();
  bound->add_option("--log-x0", blog, "constants row")->capture_default_str();
  bound->add_option("--chain", bchain, "general or small")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    cfg.validate();
    if (*constants) return run_constants(cfg, which, log_x0s, out_path);
    if (*verify) return run_verify(cfg, va);
    if (*count) return run_count(cfg, cx, cq, ca);
    if (*bound) return run_bound(cfg, bkind, bx, bq, blog, bchain);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << " (line " << e.line << ")\n";
    return kExitError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
