// table.hpp
// Uniform output envelope: a manifest (tool version + config echo) as
// '#'-prefixed comment lines, a header row, and typed cells emitted as
// CSV or JSON. All formatting is locale-independent and deterministic.

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace ppk {

// a table cell: empty (CSV "", JSON null), integer, real, or text
using Cell = std::variant<std::monostate, int64_t, uint64_t, double, std::string>;

struct OutputTable {
    std::vector<std::pair<std::string, std::string>> manifest;   // ordered key/value
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_manifest(std::string key, std::string value) {
        manifest.emplace_back(std::move(key), std::move(value));
    }
};

// explicit scalar -> Cell mapping (plain integer literals would be
// ambiguous among the variant alternatives)
inline Cell make_cell() { return Cell{}; }
inline Cell make_cell(Cell c) { return c; }
inline Cell make_cell(double v) { return v; }
inline Cell make_cell(int64_t v) { return v; }
inline Cell make_cell(uint64_t v) { return v; }
inline Cell make_cell(int v) { return int64_t{v}; }
inline Cell make_cell(unsigned v) { return uint64_t{v}; }
inline Cell make_cell(std::string v) { return Cell{std::move(v)}; }
inline Cell make_cell(const char* v) { return Cell{std::string(v)}; }

template <class... Ts>
std::vector<Cell> make_row(Ts&&... vs) {
    std::vector<Cell> row;
    row.reserve(sizeof...(Ts));
    (row.push_back(make_cell(std::forward<Ts>(vs))), ...);
    return row;
}

// shortest round-trip decimal form ("0.5", not "0.50000000000000000")
std::string format_double(double x);

void write_csv(std::ostream& os, const OutputTable& t);
void write_json(std::ostream& os, const OutputTable& t);

// two-column "x y" lines for external plotting tools
void write_plot_data(std::ostream& os,
                     const std::vector<std::pair<double, double>>& points);

} // namespace ppk
