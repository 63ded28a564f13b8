#include "fdassoc/cli/table.hpp"

#include <cmath>
#include <cstdio>
#include <istream>

#include <json.hpp>

#include "fdassoc/errors.hpp"

#ifndef FDASSOC_VERSION
#define FDASSOC_VERSION "unknown"
#endif

namespace fdassoc::cli {

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw ConfigError("row width does not match the header");
    rows.push_back(std::move(row));
}

std::size_t ResultTable::column(const std::string& name) const {
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == name) return c;
    }
    throw ConfigError("no column named " + name);
}

double ResultTable::number(std::size_t row, const std::string& name) const {
    const Cell& cell = rows.at(row).at(column(name));
    if (const double* v = std::get_if<double>(&cell)) return *v;
    throw ConfigError("column " + name + " is not numeric");
}

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::Csv;
    if (name == "json") return Format::Json;
    throw ConfigError("unknown format " + name);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

namespace {

std::string cell_text(const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) return format_number(*v);
    return std::get<std::string>(c);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                out.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                out.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.emplace_back();
        } else {
            out.back() += c;
        }
    }
    return out;
}

Cell parse_cell(const std::string& s) {
    if (s == "nan") return std::nan("");
    if (s == "inf") return INFINITY;
    if (s == "-inf") return -INFINITY;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (!s.empty() && end == s.c_str() + s.size()) return v;
    return s;
}

}  // namespace

void write_csv(std::ostream& os, const ResultTable& t) {
    for (const auto& [key, value] : t.provenance) os << "# " << key << ": " << value << '\n';
    for (std::size_t c = 0; c < t.columns.size(); ++c) os << (c ? "," : "") << csv_field(t.columns[c]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(cell_text(row[c]));
        os << '\n';
    }
}

void write_json(std::ostream& os, const ResultTable& t) {
    nlohmann::ordered_json doc;
    doc["provenance"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : t.provenance) doc["provenance"][key] = value;
    doc["columns"] = t.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const double* v = std::get_if<double>(&row[c])) {
                // JSON has no NaN or infinity; those become strings.
                if (std::isfinite(*v)) obj[t.columns[c]] = *v;
                else obj[t.columns[c]] = format_number(*v);
            } else {
                obj[t.columns[c]] = std::get<std::string>(row[c]);
            }
        }
        doc["rows"].push_back(std::move(obj));
    }
    os << doc.dump(2) << '\n';
}

void write_table(std::ostream& os, const ResultTable& t, Format f) {
    if (f == Format::Csv) write_csv(os, t);
    else write_json(os, t);
}

ResultTable read_csv(std::istream& is) {
    ResultTable t;
    std::string line;
    bool header = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!header && line.rfind("# ", 0) == 0) {
            const std::size_t colon = line.find(": ");
            if (colon == std::string::npos) throw ValidationError("malformed provenance line: " + line);
            t.provenance.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
            continue;
        }
        if (!header) {
            t.columns = split_csv_line(line);
            header = true;
            continue;
        }
        if (line.empty()) continue;
        std::vector<Cell> row;
        for (const std::string& field : split_csv_line(line)) row.push_back(parse_cell(field));
        if (row.size() != t.columns.size()) throw ValidationError("ragged CSV row: " + line);
        t.rows.push_back(std::move(row));
    }
    if (!header) throw ValidationError("CSV has no header row");
    return t;
}

std::string version() { return FDASSOC_VERSION; }

}  // namespace fdassoc::cli
