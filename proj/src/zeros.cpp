#include "apbounds/zeros.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <string_view>

#include <fmt/format.h>

#include "apbounds/errors.hpp"
#include "apbounds/quad.hpp"

namespace apb {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, long line, const std::string& source) {
  double v = 0.0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || !std::isfinite(v))
    throw ParseError(fmt::format("{}:{}: not a decimal number: '{}'", source, line, s), line);
  return v;
}

std::uint64_t parse_uint(std::string_view s, long line, const std::string& source) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size())
    throw ParseError(fmt::format("{}:{}: not an integer: '{}'", source, line, s), line);
  return v;
}

int decimals_of(std::string_view s) {
  const auto dot = s.find('.');
  if (dot == std::string_view::npos) return 0;
  return static_cast<int>(s.size() - dot - 1);
}

void validate(const ZeroTable& t, const std::vector<long>& lines) {
  for (size_t i = 0; i < t.ordinates.size(); ++i) {
    if (!(t.ordinates[i] > 0.0))
      throw ValidationError(fmt::format("{}:{}: ordinate {} is not positive", t.source,
                                        lines[i], t.ordinates[i]));
    if (i > 0 && !(t.ordinates[i] > t.ordinates[i - 1]))
      throw ValidationError(fmt::format("{}:{}: ordinates not strictly ascending ({} after {})",
                                        t.source, lines[i], t.ordinates[i],
                                        t.ordinates[i - 1]));
  }
}

void finish(ZeroTable& t, double declared_height) {
  const double last = t.ordinates.empty() ? 0.0 : t.ordinates.back();
  t.max_height = std::max(last, declared_height);
}

// "# max_height: 200" style directive
bool directive(std::string_view line, double& height) {
  line.remove_prefix(1);
  line = trim(line);
  constexpr std::string_view key = "max_height";
  if (line.substr(0, key.size()) != key) return false;
  line.remove_prefix(key.size());
  line = trim(line);
  if (!line.empty() && (line.front() == ':' || line.front() == '=')) line.remove_prefix(1);
  line = trim(line);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(line.data(), line.data() + line.size(), v);
  if (ec != std::errc() || p != line.data() + line.size()) return false;
  height = v;
  return true;
}

}  // namespace

std::size_t ZeroTable::count_upto(double T) const {
  return static_cast<std::size_t>(std::upper_bound(ordinates.begin(), ordinates.end(), T) -
                                  ordinates.begin());
}

std::string format_expected(ZeroKind kind) {
  if (kind == ZeroKind::zeta)
    return "zeta zeros file: plain text, one decimal ordinate per line, ascending "
           "(e.g. 14.134725142)";
  return "Dirichlet zeros file: CSV with header q,index,gamma; gamma > 0 ascending "
         "within each (q,index) group";
}

ZeroTable parse_zeta_zeros(std::istream& in, const std::string& source) {
  ZeroTable t;
  t.kind = ZeroKind::zeta;
  t.source = source;
  t.decimals = 0;
  std::vector<long> lines;
  double declared = 0.0;
  std::string raw;
  long line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '#') {
      directive(s, declared);
      continue;
    }
    t.ordinates.push_back(parse_real(s, line_no, source));
    t.decimals = std::max(t.decimals, decimals_of(s));
    lines.push_back(line_no);
  }
  if (t.ordinates.empty()) t.decimals = 12;
  validate(t, lines);
  finish(t, declared);
  return t;
}

std::vector<ZeroTable> parse_dirichlet_zeros(std::istream& in, const std::string& source) {
  std::string raw;
  long line_no = 0;
  bool header = false;
  double declared = 0.0;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::pair<ZeroTable, std::vector<long>>> groups;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto s = trim(raw);
    if (s.empty()) continue;
    if (s.front() == '#') {
      directive(s, declared);
      continue;
    }
    if (!header) {
      if (s != "q,index,gamma")
        throw ParseError(fmt::format("{}:{}: expected header 'q,index,gamma'", source, line_no),
                         line_no);
      header = true;
      continue;
    }
    const auto c1 = s.find(',');
    const auto c2 = c1 == std::string_view::npos ? c1 : s.find(',', c1 + 1);
    if (c2 == std::string_view::npos || s.find(',', c2 + 1) != std::string_view::npos)
      throw ParseError(fmt::format("{}:{}: expected 3 fields", source, line_no), line_no);
    const auto q = parse_uint(trim(s.substr(0, c1)), line_no, source);
    const auto idx = parse_uint(trim(s.substr(c1 + 1, c2 - c1 - 1)), line_no, source);
    const auto gs = trim(s.substr(c2 + 1));
    const double g = parse_real(gs, line_no, source);
    auto& [tab, lines] = groups[{q, idx}];
    if (lines.empty()) {
      tab.kind = ZeroKind::dirichlet;
      tab.label = CharacterLabel{q, idx};
      tab.source = source;
      tab.decimals = 0;
    }
    tab.ordinates.push_back(g);
    tab.decimals = std::max(tab.decimals, decimals_of(gs));
    lines.push_back(line_no);
  }
  std::vector<ZeroTable> out;
  for (auto& [key, val] : groups) {
    auto& [tab, lines] = val;
    if (tab.label->q < 3 || std::gcd(tab.label->q, tab.label->index) != 1)
      throw ValidationError(fmt::format("{}: invalid character label q={} index={}", source,
                                        tab.label->q, tab.label->index));
    validate(tab, lines);
    finish(tab, declared);
    out.push_back(std::move(tab));
  }
  return out;
}

std::vector<ZeroTable> load_dirichlet_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw PreconditionError(fmt::format("cannot open '{}'; expected a {}", path,
                                        format_expected(ZeroKind::dirichlet)));
  return parse_dirichlet_zeros(in, path);
}

ZeroTable load_zero_table(const std::string& path, ZeroKind kind,
                          std::optional<CharacterLabel> label) {
  if (kind == ZeroKind::zeta) {
    std::ifstream in(path);
    if (!in)
      throw PreconditionError(
          fmt::format("cannot open '{}'; expected a {}", path, format_expected(kind)));
    return parse_zeta_zeros(in, path);
  }
  auto all = load_dirichlet_zeros(path);
  if (!label) {
    if (all.size() == 1) return std::move(all.front());
    throw PreconditionError(fmt::format(
        "'{}' holds {} characters; a (q, index) label is required", path, all.size()));
  }
  for (auto& t : all)
    if (t.label == label) return std::move(t);
  throw ValidationError(fmt::format("'{}' has no zeros for q={} index={}", path, label->q,
                                    label->index));
}

void write_zero_table(std::ostream& out, const ZeroTable& t) {
  const double last = t.ordinates.empty() ? 0.0 : t.ordinates.back();
  if (t.max_height > last) out << fmt::format("# max_height: {}\n", t.max_height);
  if (t.kind == ZeroKind::zeta) {
    for (double g : t.ordinates) out << fmt::format("{:.{}f}\n", g, t.decimals);
    return;
  }
  out << "q,index,gamma\n";
  for (double g : t.ordinates)
    out << fmt::format("{},{},{:.{}f}\n", t.label->q, t.label->index, g, t.decimals);
}

double exact_weighted_sum(const ZeroTable& t, const WeightSpec& phi, double U, double V,
                          bool endpoint_half_weight) {
  if (!(U <= V)) throw DomainError(fmt::format("exact_weighted_sum: U={} > V={}", U, V));
  if (V > t.max_height)
    throw CoverageError(fmt::format("zero table '{}' covers heights up to {}, asked for {}",
                                    t.source, t.max_height, V));
  const auto& g = t.ordinates;
  auto lo = std::lower_bound(g.begin(), g.end(), U);
  auto hi = std::upper_bound(g.begin(), g.end(), V);
  CompensatedSum s;
  const double edge = endpoint_half_weight ? 0.5 : 1.0;
  if (lo != hi && *lo == U) {
    s += edge * phi(*lo);
    ++lo;
  }
  if (lo != hi && *(hi - 1) == V) {
    --hi;
    s += edge * phi(*hi);
  }
  if (lo < hi) {
    const double* p = &*lo;
    const auto n = static_cast<std::size_t>(hi - lo);
    if (phi.kernel) {
      s += kernels::active().weight_sum(p, n, *phi.kernel);
    } else {
      for (std::size_t i = 0; i < n; ++i) s += phi(p[i]);
    }
  }
  const double v = s.value();
  return t.kind == ZeroKind::dirichlet ? 2.0 * v : v;
}

double omega_low_sum(const ZeroTable& t) {
  if (t.kind != ZeroKind::dirichlet)
    throw PreconditionError("omega_low_sum: requires a Dirichlet zero table");
  if (t.max_height < 200.0)
    throw CoverageError(fmt::format("omega_low_sum: table '{}' covers only up to {} < 200",
                                    t.source, t.max_height));
  return exact_weighted_sum(t, WeightSpec::inverse_norm(), 0.0, 200.0, false);
}

}  // namespace apb
