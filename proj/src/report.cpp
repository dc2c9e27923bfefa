#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "apbounds/errors.hpp"
#include "apbounds/verify.hpp"
#include "json.hpp"

namespace apb {
namespace {

using json = nlohmann::ordered_json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double den(const json& j) { return j.is_null() ? NAN : j.get<double>(); }

}  // namespace

std::string to_json(const BoundReport& r, int indent) {
  json j;
  j["check_name"] = r.check_name;
  j["violations"] = r.violations;
  j["skipped"] = r.skipped;
  j["runtime"] = r.runtime;
  j["comparison_only"] = r.comparison_only;
  j["passed"] = r.passed();
  j["notes"] = json::object();
  for (const auto& [k, v] : r.notes) j["notes"][k] = v;
  j["samples"] = json::array();
  for (const auto& s : r.samples)
    j["samples"].push_back({{"x", num(s.x)},
                            {"q", s.q},
                            {"a", s.a},
                            {"label", s.label},
                            {"lhs", num(s.lhs)},
                            {"rhs", num(s.rhs)},
                            {"margin", num(s.margin)},
                            {"skipped", s.skipped}});
  return j.dump(indent);
}

BoundReport report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(fmt::format("report: {}", e.what()), 0);
  }
  BoundReport r;
  try {
    r.check_name = j.at("check_name").get<std::string>();
    r.comparison_only = j.value("comparison_only", false);
    r.runtime = j.value("runtime", 0.0);
    const json notes = j.value("notes", json::object());
    for (const auto& [k, v] : notes.items()) r.notes.push_back({k, v.get<std::string>()});
    for (const auto& s : j.at("samples")) {
      Sample x{den(s.at("x")), s.at("q").get<std::uint64_t>(), s.at("a").get<std::uint64_t>(),
               s.at("label").get<std::string>(), den(s.at("lhs")), den(s.at("rhs")), 0, false};
      r.add(x, s.value("skipped", false));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("report: {}", e.what()), 0);
  }
  return r;
}

std::string to_markdown(const BoundReport& r, std::size_t max_rows) {
  std::string out = fmt::format("## {}\n\n", r.check_name);
  if (r.comparison_only)
    out += fmt::format("comparison only; {} samples, runtime {:.3f} s\n\n", r.samples.size(), r.runtime);
  else
    out += fmt::format("**{}**: {} samples, {} violations, {} skipped (rhs <= 0), runtime {:.3f} s\n\n",
                       r.passed() ? "PASS" : "FAIL", r.samples.size(), r.violations, r.skipped,
                       r.runtime);
  for (const auto& [k, v] : r.notes) out += fmt::format("- {}: {}\n", k, v);
  if (!r.notes.empty()) out += "\n";
  out += "| x | q | a | check | lhs | rhs | margin | |\n|---|---|---|---|---|---|---|---|\n";
  // violations first, then the tightest margins
  std::vector<const Sample*> rows;
  for (const auto& s : r.samples) rows.push_back(&s);
  std::stable_sort(rows.begin(), rows.end(), [](const Sample* a, const Sample* b) {
    if (a->skipped != b->skipped) return !a->skipped;
    return a->margin < b->margin;
  });
  for (std::size_t i = 0; i < rows.size() && i < max_rows; ++i) {
    const auto& s = *rows[i];
    const char* flag = s.skipped ? "skipped" : (!r.comparison_only && !(s.lhs <= s.rhs)) ? "VIOLATION" : "";
    out += fmt::format("| {:.6g} | {} | {} | {} | {:.6g} | {:.6g} | {:.6g} | {} |\n", s.x, s.q, s.a,
                       s.label, s.lhs, s.rhs, s.margin, flag);
  }
  if (rows.size() > max_rows)
    out += fmt::format("\n({} more rows omitted)\n", rows.size() - max_rows);
  return out;
}

}  // namespace apb
