#include "apbounds/table.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "apbounds/errors.hpp"
#include "json.hpp"

namespace apb {
namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kSmallLabel = "log(1.05e7)";

std::string bump(const std::string& s, Rounding r) {
  // move the last printed digit one step in the rounding direction
  const auto e = s.find('e');
  const double step = r == Rounding::up ? 1e-5 : -1e-5;
  if (e == std::string::npos) {
    const double c = std::stod(s) + step;
    return fmt::format("{:.5f}", c == 0.0 ? 0.0 : c);
  }
  double m = std::stod(s.substr(0, e)) + step;
  int ex = std::stoi(s.substr(e + 1));
  if (std::fabs(m) >= 9.999995) {
    m /= 10;
    ++ex;
  }
  return fmt::format("{:.5f}e{}{:02d}", m, ex < 0 ? '-' : '+', std::abs(ex));
}

std::vector<Column> columns_for(TableKind k) {
  using R = Rounding;
  switch (k) {
    case TableKind::soz:
      return {{"k1"}, {"k2"}, {"~k1"}, {"~k2"}};
    case TableKind::short_interval:
      return {{"kappa0", R::nearest}, {"kappa1", R::nearest}, {"kappa2", R::nearest},
              {"k3", R::up}, {"k4", R::down}};
    case TableKind::twisted:
      return {{"k5"}, {"k6"}, {"Omega0"}, {"Omega1"}, {"Omega2"},
              {"~Omega0"}, {"~Omega1"}, {"~Omega2"}};
    case TableKind::ap:
      return {{"a1"}, {"a2"}, {"a3"}, {"a4"}, {"a5"}, {"a6"},
              {"~a1"}, {"~a2"}, {"~a3"}, {"~a4"}, {"~a5"}, {"~a6"},
              {"Omega3"}, {"Omega4"}, {"Omega5"}, {"Omega6"}, {"Omega7"},
              {"~Omega3"}, {"~Omega4"}, {"~Omega6"}, {"~Omega7"}};
  }
  return {};
}

using Values = std::vector<std::optional<double>>;

Values row_values(TableKind k, double log_x0, Profile p, std::string& note) {
  const bool small = log_x0 >= small_moduli_log_x0_min();
  switch (k) {
    case TableKind::soz: {
      const auto s = small ? soz_constants_small(log_x0, kOmegaDefault, p) : soz_constants(log_x0, p);
      return {s.k1, s.k2, s.k1_small, s.k2_small};
    }
    case TableKind::short_interval: {
      KappaParams kappa;
      auto policy = KappaPolicy::strict;
      if (auto row = published_kappa(log_x0); row && p == Profile::published) {
        kappa = *row;
        policy = KappaPolicy::as_printed;
        note = "kappa: table";
      } else {
        kappa = optimize_kappa(log_x0, p).kappa;
        note = "kappa: optimized";
      }
      const auto si = short_interval_constants(log_x0, kappa, p, policy);
      return {kappa.k0, kappa.k1, kappa.k2, si.k3, si.k4};
    }
    case TableKind::twisted: {
      PipelineOptions o;
      o.profile = p;
      const auto c = compute_pipeline(log_x0, o);
      note = "kappa: " + c.kappa_source;
      const auto& t = c.tp;
      return {t.k5, t.k6, t.omega0, t.omega1, t.omega2, t.omega0_small, t.omega1_small, t.omega2_small};
    }
    case TableKind::ap: {
      PipelineOptions o;
      o.profile = p;
      const auto c = compute_pipeline(log_x0, o);
      note = "kappa: " + c.kappa_source;
      const auto& a = c.ap;
      Values v(a.a.begin(), a.a.end());
      for (int i = 0; i < 6; ++i) v.push_back(a.a_small ? std::optional((*a.a_small)[i]) : std::nullopt);
      for (double w : {a.omega3, a.omega4, a.omega5, a.omega6, a.omega7}) v.push_back(w);
      for (auto w : {a.omega3_small, a.omega4_small, a.omega6_small, a.omega7_small}) v.push_back(w);
      return v;
    }
  }
  return {};
}

std::string title_for(TableKind k) {
  switch (k) {
    case TableKind::soz: return "Sum over zeros constants";
    case TableKind::short_interval: return "Short-interval constants";
    case TableKind::twisted: return "Twisted psi constants";
    case TableKind::ap: return "Progression constants";
  }
  return {};
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

Cell parse_cell(const std::string& text, int line) {
  if (text.empty()) return {};
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return {v, text};
  } catch (const std::exception&) {
    throw ParseError(fmt::format("table: bad number '{}'", text), line);
  }
}

}  // namespace

std::string_view to_string(TableKind k) {
  switch (k) {
    case TableKind::soz: return "soz";
    case TableKind::short_interval: return "short-interval";
    case TableKind::twisted: return "twisted";
    case TableKind::ap: return "ap";
  }
  return "?";
}

TableKind parse_table_kind(std::string_view s) {
  for (auto k : {TableKind::soz, TableKind::short_interval, TableKind::twisted, TableKind::ap})
    if (to_string(k) == s) return k;
  throw DomainError(fmt::format("unknown table '{}' (soz|short-interval|twisted|ap)", s));
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::md: return "md";
    case OutputFormat::csv: return "csv";
    case OutputFormat::json: return "json";
  }
  return "?";
}

OutputFormat parse_output_format(std::string_view s) {
  for (auto f : {OutputFormat::md, OutputFormat::csv, OutputFormat::json})
    if (to_string(f) == s) return f;
  throw DomainError(fmt::format("unknown format '{}' (md|csv|json)", s));
}

std::string format_cell(double v, Rounding r) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::string s;
  if (std::fabs(v) >= 1e4) {
    s = fmt::format("{:.5e}", v);
  } else {
    s = fmt::format("{:.5f}", v);
    if (s == "-0.00000") s = "0.00000";
  }
  const double c = std::stod(s);
  if ((r == Rounding::up && c < v) || (r == Rounding::down && c > v)) s = bump(s, r);
  return s;
}

bool ConstantsTable::has_errors() const {
  return std::any_of(rows.begin(), rows.end(), [](const TableRow& r) { return !r.error.empty(); });
}

std::vector<double> default_log_x0_grid() {
  std::vector<double> g{10, 20, 30, 40, 50, 60, 70, 80, 90, 100, 150, 200, 250, 500};
  g.push_back(small_moduli_log_x0_min());
  std::sort(g.begin(), g.end());
  return g;
}

std::string format_log_x0(double log_x0) {
  if (std::fabs(log_x0 - small_moduli_log_x0_min()) < 1e-12) return std::string(kSmallLabel);
  return fmt::format("{}", log_x0);
}

ConstantsTable build_table(TableKind kind, const std::vector<double>& log_x0s, Profile p) {
  ConstantsTable t;
  t.kind = kind;
  t.title = fmt::format("{} ({} profile)", title_for(kind), to_string(p));
  t.columns = columns_for(kind);
  for (double l : log_x0s) {
    TableRow row;
    row.log_x0 = format_log_x0(l);
    try {
      const auto v = row_values(kind, l, p, row.note);
      for (std::size_t i = 0; i < v.size(); ++i)
        row.cells.push_back(v[i] ? Cell{v[i], format_cell(*v[i], t.columns[i].rounding)} : Cell{});
    } catch (const Error& e) {
      row.cells.clear();
      row.error = e.what();
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

std::string render(const ConstantsTable& t, OutputFormat f) {
  const bool with_note = t.kind == TableKind::short_interval;
  std::string out;
  switch (f) {
    case OutputFormat::md: {
      out = fmt::format("## {}\n\n| log x0 |", t.title);
      for (const auto& c : t.columns) out += fmt::format(" {} |", c.name);
      if (with_note) out += " note |";
      out += "\n|---|";
      for (std::size_t i = 0; i < t.columns.size(); ++i) out += "---|";
      if (with_note) out += "---|";
      out += "\n";
      for (const auto& r : t.rows) {
        out += fmt::format("| {} |", r.log_x0);
        if (!r.error.empty()) {
          out += fmt::format(" error: {} |\n", r.error);
          continue;
        }
        for (const auto& c : r.cells) out += fmt::format(" {} |", c.value ? c.text : "-");
        if (with_note) out += fmt::format(" {} |", r.note);
        out += "\n";
      }
      return out;
    }
    case OutputFormat::csv: {
      out = "log_x0";
      for (const auto& c : t.columns) out += "," + csv_field(c.name);
      out += with_note ? ",note,error\n" : ",error\n";
      for (const auto& r : t.rows) {
        out += csv_field(r.log_x0);
        for (std::size_t i = 0; i < t.columns.size(); ++i)
          out += "," + (i < r.cells.size() && r.cells[i].value ? r.cells[i].text : std::string());
        if (with_note) out += "," + csv_field(r.note);
        out += "," + csv_field(r.error) + "\n";
      }
      return out;
    }
    case OutputFormat::json: {
      json j;
      j["title"] = t.title;
      j["table"] = to_string(t.kind);
      j["columns"] = json::array();
      for (const auto& c : t.columns) j["columns"].push_back(c.name);
      j["rows"] = json::array();
      for (const auto& r : t.rows) {
        json row;
        row["log_x0"] = r.log_x0;
        if (!r.error.empty()) {
          row["error"] = r.error;
        } else {
          json vals = json::object();
          for (std::size_t i = 0; i < t.columns.size(); ++i)
            vals[t.columns[i].name] =
                i < r.cells.size() && r.cells[i].value ? json(std::stod(r.cells[i].text)) : json(nullptr);
          row["values"] = vals;
          if (!r.note.empty()) row["note"] = r.note;
        }
        j["rows"].push_back(row);
      }
      return j.dump(2) + "\n";
    }
  }
  return out;
}

ConstantsTable parse_table(const std::string& text, OutputFormat f, TableKind kind) {
  ConstantsTable t;
  t.kind = kind;
  t.title = title_for(kind);
  const auto defaults = columns_for(kind);
  auto rounding_of = [&](const std::string& name) {
    for (const auto& c : defaults)
      if (c.name == name) return c.rounding;
    return Rounding::nearest;
  };
  switch (f) {
    case OutputFormat::md:
      throw DomainError("parse_table: markdown is output only");
    case OutputFormat::csv: {
      std::istringstream in(text);
      std::string line;
      if (!std::getline(in, line)) throw ParseError("table: empty csv", 1);
      auto head = split_csv(line);
      if (head.size() < 2 || head.front() != "log_x0" || head.back() != "error")
        throw ParseError("table: csv header must start with log_x0 and end with error", 1);
      const bool with_note = head.size() >= 3 && head[head.size() - 2] == "note";
      const std::size_t ncols = head.size() - 2 - (with_note ? 1 : 0);
      for (std::size_t i = 1; i <= ncols; ++i) t.columns.push_back({head[i], rounding_of(head[i])});
      int n = 1;
      while (std::getline(in, line)) {
        ++n;
        if (line.empty()) continue;
        const auto f2 = split_csv(line);
        if (f2.size() != head.size())
          throw ParseError(fmt::format("table: expected {} fields, got {}", head.size(), f2.size()), n);
        TableRow r;
        r.log_x0 = f2[0];
        r.error = f2.back();
        if (with_note) r.note = f2[f2.size() - 2];
        if (r.error.empty())
          for (std::size_t i = 1; i <= ncols; ++i) r.cells.push_back(parse_cell(f2[i], n));
        t.rows.push_back(std::move(r));
      }
      return t;
    }
    case OutputFormat::json: {
      json j;
      try {
        j = json::parse(text);
        t.title = j.at("title").get<std::string>();
        for (const auto& c : j.at("columns")) {
          const auto name = c.get<std::string>();
          t.columns.push_back({name, rounding_of(name)});
        }
        for (const auto& jr : j.at("rows")) {
          TableRow r;
          r.log_x0 = jr.at("log_x0").get<std::string>();
          r.error = jr.value("error", std::string());
          r.note = jr.value("note", std::string());
          if (r.error.empty()) {
            const auto& vals = jr.at("values");
            for (const auto& c : t.columns) {
              const auto& v = vals.at(c.name);
              if (v.is_null()) {
                r.cells.push_back({});
              } else {
                const double d = v.get<double>();
                r.cells.push_back({d, format_cell(d)});
              }
            }
          }
          t.rows.push_back(std::move(r));
        }
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(fmt::format("table: {}", e.what()), 0);
      }
      return t;
    }
  }
  return t;
}

}  // namespace apb
