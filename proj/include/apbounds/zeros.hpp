#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "apbounds/weight.hpp"

namespace apb {

enum class ZeroKind { zeta, dirichlet };

struct CharacterLabel {
  std::uint64_t q = 0;
  std::uint64_t index = 0;
  bool operator==(const CharacterLabel&) const = default;
};

struct ZeroTable {
  ZeroKind kind = ZeroKind::zeta;
  std::optional<CharacterLabel> label;
  std::vector<double> ordinates;  // strictly increasing, > 0
  double max_height = 0.0;        // heights up to here are complete
  std::string source;
  int decimals = 12;              // precision used when re-serialising

  std::size_t size() const { return ordinates.size(); }
  // number of ordinates <= T (one per zero; Dirichlet tables not doubled)
  std::size_t count_upto(double T) const;
};

// Zeta files: one decimal ordinate per line, ascending. Lines starting
// with '#' are comments; "# max_height: H" declares coverage beyond the
// last ordinate.
// Dirichlet files: CSV with header q,index,gamma, gamma > 0 ascending
// within each (q,index) group.
ZeroTable load_zero_table(const std::string& path, ZeroKind kind,
                          std::optional<CharacterLabel> label = std::nullopt);
ZeroTable parse_zeta_zeros(std::istream& in, const std::string& source);
std::vector<ZeroTable> parse_dirichlet_zeros(std::istream& in, const std::string& source);
std::vector<ZeroTable> load_dirichlet_zeros(const std::string& path);

void write_zero_table(std::ostream& out, const ZeroTable& t);

// Sum of phi(gamma) over U <= gamma <= V; ordinates equal to U or V get
// weight 1/2 when endpoint_half_weight is set. Dirichlet tables count
// each stored ordinate twice (conjugate pair).
double exact_weighted_sum(const ZeroTable& t, const WeightSpec& phi, double U, double V,
                          bool endpoint_half_weight = true);

// sum over |gamma| <= 200 of (1/4 + gamma^2)^(-1/2) for a Dirichlet table
double omega_low_sum(const ZeroTable& t);

std::string format_expected(ZeroKind kind);

}  // namespace apb
