#pragma once

#include <optional>
#include <string>
#include <vector>

#include "apbounds/constants.hpp"

namespace apb {

enum class TableKind { soz, short_interval, twisted, ap };
enum class OutputFormat { md, csv, json };
// upper-bound constants round up, subtracted ones down, parameters to nearest
enum class Rounding { nearest, up, down };

std::string_view to_string(TableKind k);
TableKind parse_table_kind(std::string_view s);
std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view s);

// 5 decimals; scientific (8.31357e+03) when |v| >= 1e4
std::string format_cell(double v, Rounding r = Rounding::nearest);

struct Cell {
  std::optional<double> value;  // empty where the column does not apply
  std::string text;
};

struct Column {
  std::string name;
  Rounding rounding = Rounding::up;
};

struct TableRow {
  std::string log_x0;  // as printed, e.g. "20" or "log(1.05e7)"
  std::vector<Cell> cells;
  std::string note;   // kappa provenance for the short-interval table
  std::string error;  // set instead of cells when the row could not be computed
};

struct ConstantsTable {
  TableKind kind = TableKind::ap;
  std::string title;
  std::vector<Column> columns;
  std::vector<TableRow> rows;
  bool has_errors() const;
};

// 10, 20, ..., 100, 150, 200, 250, 500 and log(1.05e7), ascending
std::vector<double> default_log_x0_grid();
std::string format_log_x0(double log_x0);

ConstantsTable build_table(TableKind kind, const std::vector<double>& log_x0s,
                           Profile p = Profile::published);

std::string render(const ConstantsTable& t, OutputFormat f);
// csv and json only; render(parse(render(t))) == render(t)
ConstantsTable parse_table(const std::string& text, OutputFormat f, TableKind kind);

}  // namespace apb
