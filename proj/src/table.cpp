// table.cpp

#include "ppk/table.hpp"

#include <charconv>
#include <cmath>

#include <json.hpp>

namespace ppk {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

namespace {

std::string cell_to_string(const Cell& c) {
    struct V {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(int64_t v) const { return std::to_string(v); }
        std::string operator()(uint64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_double(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(V{}, c);
}

nlohmann::ordered_json cell_to_json(const Cell& c) {
    struct V {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(int64_t v) const { return v; }
        nlohmann::ordered_json operator()(uint64_t v) const { return v; }
        nlohmann::ordered_json operator()(double v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& v) const { return v; }
    };
    return std::visit(V{}, c);
}

} // namespace

void write_csv(std::ostream& os, const OutputTable& t) {
    for (const auto& [k, v] : t.manifest)
        os << "# " << k << ": " << v << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            os << (i ? "," : "") << cell_to_string(row[i]);
        os << "\n";
    }
}

void write_json(std::ostream& os, const OutputTable& t) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json manifest;
    for (const auto& [k, v] : t.manifest) manifest[k] = v;
    doc["manifest"] = manifest;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj;
        for (size_t i = 0; i < row.size() && i < t.columns.size(); ++i)
            obj[t.columns[i]] = cell_to_json(row[i]);
        rows.push_back(std::move(obj));
    }
    doc["rows"] = rows;
    os << doc.dump(2) << "\n";
}

void write_plot_data(std::ostream& os,
                     const std::vector<std::pair<double, double>>& points) {
    for (const auto& [x, y] : points)
        os << format_double(x) << " " << format_double(y) << "\n";
}

} // namespace ppk
