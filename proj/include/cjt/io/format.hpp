// format.hpp -- deterministic text emission: lowercase scientific floats with
// a canonical exponent (no plus sign, no leading zeros), CSV tables and a
// mirrored JSON form. Fixtures diff cleanly because every byte is produced
// here.

#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cjt::io {

// e.g. format_sci(0.7071..., 12) -> "7.071067811865e-1"
inline std::string format_sci(double v, int precision) {
    if (precision < 0 || precision > 30) throw std::invalid_argument("format_sci: bad precision");
    if (v == 0.0) v = 0.0; // collapse negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", precision, v);
    const std::string s(buf);
    const std::size_t epos = s.find('e');
    if (epos == std::string::npos) return s; // nan/inf
    std::string mantissa = s.substr(0, epos);
    std::string exp = s.substr(epos + 1);
    bool negative = false;
    if (!exp.empty() && (exp[0] == '+' || exp[0] == '-')) {
        negative = exp[0] == '-';
        exp.erase(0, 1);
    }
    std::size_t first = exp.find_first_not_of('0');
    exp = first == std::string::npos ? "0" : exp.substr(first);
    if (exp == "0") negative = false;
    return mantissa + "e" + (negative ? "-" : "") + exp;
}

struct Cell {
    std::string text;
    bool quoted{false}; // JSON: quoted string vs raw number

    Cell() = default;
    Cell(std::string t, bool q) : text(std::move(t)), quoted(q) {}
};

inline Cell number_cell(double v, int precision) { return {format_sci(v, precision), false}; }
inline Cell integer_cell(long long v) { return {std::to_string(v), false}; }
inline Cell text_cell(std::string s) { return {std::move(s), true}; }
inline Cell empty_cell() { return {"", true}; }

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

inline std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c) out += ',';
        out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += row[c].text;
        }
        out += '\n';
    }
    return out;
}

inline std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

inline std::string cell_json(const Cell& c) {
    if (!c.quoted) return c.text.empty() ? "null" : c.text;
    return "\"" + json_escape(c.text) + "\"";
}

// array of row objects mirroring the CSV column names
inline std::string to_json(const Table& t) {
    std::string out = "[\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        out += "  {";
        for (std::size_t c = 0; c < t.columns.size(); ++c) {
            if (c) out += ", ";
            out += "\"" + json_escape(t.columns[c]) + "\": " + cell_json(t.rows[r][c]);
        }
        out += r + 1 < t.rows.size() ? "},\n" : "}\n";
    }
    out += "]\n";
    return out;
}

// single-record form: key/value object
inline std::string to_json(const std::vector<std::pair<std::string, Cell>>& record) {
    std::string out = "{\n";
    for (std::size_t i = 0; i < record.size(); ++i) {
        out += "  \"" + json_escape(record[i].first) + "\": " + cell_json(record[i].second);
        out += i + 1 < record.size() ? ",\n" : "\n";
    }
    out += "}\n";
    return out;
}

inline Table record_table(const std::vector<std::pair<std::string, Cell>>& record) {
    Table t;
    t.rows.emplace_back();
    for (const auto& [key, cell] : record) {
        t.columns.push_back(key);
        t.rows.front().push_back(cell);
    }
    return t;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw std::runtime_error("failed writing output file: " + path);
}

} // namespace cjt::io
