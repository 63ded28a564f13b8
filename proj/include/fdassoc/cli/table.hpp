#pragma once

// Rectangular result tables with a provenance header, written as CSV or JSON.

#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace fdassoc::cli {

using Cell = std::variant<double, std::string>;

struct ResultTable {
    /// Ordered key/value pairs written as `# key: value` lines.
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);  // throws if the width is wrong
    std::size_t column(const std::string& name) const;  // throws ConfigError
    double number(std::size_t row, const std::string& name) const;
};

enum class Format { Csv, Json };
Format parse_format(const std::string& name);

/// 17 significant digits, `nan`, `inf`, `-inf`.
std::string format_number(double v);
/// Quotes a field when it holds a comma, a quote or a line break.
std::string csv_field(const std::string& s);

void write_csv(std::ostream& os, const ResultTable& t);
void write_json(std::ostream& os, const ResultTable& t);
void write_table(std::ostream& os, const ResultTable& t, Format f);

/// Reads a table written by write_csv back, including its provenance.
ResultTable read_csv(std::istream& is);

/// Version string baked in at configure time.
std::string version();

}  // namespace fdassoc::cli
