#include <cmath>

#include "apbounds/errors.hpp"
#include "apbounds/table.hpp"
#include "doctest.h"

using namespace apb;

TEST_CASE("cell formatting") {
  CHECK(format_cell(1.271464) == "1.27146");
  CHECK(format_cell(1.271464, Rounding::up) == "1.27147");
  CHECK(format_cell(1.271464, Rounding::down) == "1.27146");
  CHECK(format_cell(1.27146, Rounding::up) == "1.27146");
  CHECK(format_cell(-10.806034, Rounding::up) == "-10.80603");
  CHECK(format_cell(-10.806034, Rounding::down) == "-10.80604");
  CHECK(format_cell(8313.571, Rounding::down) == "8313.57100");
  CHECK(format_cell(-1.19899e4) == "-1.19899e+04");
  CHECK(format_cell(1.6605612e112, Rounding::up) == "1.66057e+112");
  CHECK(format_cell(1.6605612e112, Rounding::down) == "1.66056e+112");
  CHECK(format_cell(9.9999991e5, Rounding::up) == "1.00000e+06");
  CHECK(format_cell(-1e-9) == "0.00000");
  CHECK(format_cell(-1e-9, Rounding::down) == "-0.00001");
  CHECK(format_cell(NAN) == "nan");
  // directed rounding never crosses the value
  for (double v : {0.1, 2.36179, 3.3e-7, -7.60473, 1234.567891, 4.58854e24, -2.39568e112}) {
    CHECK(std::stod(format_cell(v, Rounding::up)) >= v);
    CHECK(std::stod(format_cell(v, Rounding::down)) <= v);
  }
}

TEST_CASE("default grid") {
  const auto g = default_log_x0_grid();
  CHECK(g.size() == 15);
  CHECK(g.front() == 10);
  CHECK(g[1] == doctest::Approx(std::log(1.05e7)));
  CHECK(g.back() == 500);
  CHECK(format_log_x0(g[1]) == "log(1.05e7)");
  CHECK(format_log_x0(20) == "20");
}

TEST_CASE("table rows") {
  const auto ap = build_table(TableKind::ap, {10});
  const auto csv = render(ap, OutputFormat::csv);
  CHECK(csv.find("log_x0,a1,a2,a3,a4,a5,a6,") == 0);
  CHECK(csv.find("\n10,1.2714") != std::string::npos);
  const auto& r = ap.rows[0];
  CHECK(*r.cells[0].value == doctest::Approx(1.27146).epsilon(5e-3));
  CHECK(*r.cells[1].value == doctest::Approx(11.85396).epsilon(5e-3));
  CHECK_FALSE(r.cells[6].value);  // no small-moduli chain at log x0 = 10

  const auto soz = build_table(TableKind::soz, {20});
  CHECK(std::fabs(*soz.rows[0].cells[0].value - 1.39025) < 5e-5);

  const auto bad = build_table(TableKind::ap, {5, 10});
  CHECK(bad.has_errors());
  CHECK(bad.rows[0].error.find("log x0") != std::string::npos);
  CHECK(bad.rows[1].error.empty());
  CHECK_FALSE(ap.has_errors());

  const auto si = build_table(TableKind::short_interval, {10, std::log(1.05e7)});
  CHECK(si.rows[0].note == "kappa: table");
  CHECK(si.rows[1].note == "kappa: optimized");
  CHECK(si.columns[4].rounding == Rounding::down);
}

TEST_CASE("round trips") {
  auto g = default_log_x0_grid();
  g.insert(g.begin(), 5);
  for (auto kind : {TableKind::soz, TableKind::short_interval, TableKind::twisted, TableKind::ap}) {
    CAPTURE(to_string(kind));
    const auto t = build_table(kind, g);
    for (auto f : {OutputFormat::csv, OutputFormat::json}) {
      const auto once = render(t, f);
      const auto back = parse_table(once, f, kind);
      CHECK(back.rows.size() == t.rows.size());
      CHECK(render(back, f) == once);
      CHECK(render(parse_table(render(back, f), f, kind), f) == once);
    }
    CHECK(render(t, OutputFormat::md).find("| 5 | error:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_table("", OutputFormat::csv, TableKind::ap), ParseError);
  CHECK_THROWS_AS(parse_table("log_x0,a1,error\n10,abc,\n", OutputFormat::csv, TableKind::ap), ParseError);
  CHECK_THROWS_AS(parse_table("log_x0,a1,error\n10,1,2,3\n", OutputFormat::csv, TableKind::ap), ParseError);
  CHECK_THROWS_AS(parse_table("[", OutputFormat::json, TableKind::ap), ParseError);
  CHECK_THROWS_AS(parse_table("x", OutputFormat::md, TableKind::ap), DomainError);
}

TEST_CASE("names") {
  CHECK(parse_table_kind("short-interval") == TableKind::short_interval);
  CHECK(parse_output_format("json") == OutputFormat::json);
  CHECK_THROWS_AS(parse_table_kind("x"), DomainError);
  CHECK_THROWS_AS(parse_output_format("xml"), DomainError);
}
