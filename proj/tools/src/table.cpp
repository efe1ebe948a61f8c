#include "levyx_cli/table.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "levyx/error.hpp"

namespace levyx::cli {

Format format_from_string(const std::string& s) {
    if (s == "csv") return Format::Csv;
    if (s == "jsonl") return Format::JsonLines;
    fail(ErrorKind::Config, "unknown output format '" + s + "' (expected csv or jsonl)");
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

Table::Table(std::string command, std::vector<std::string> columns)
    : command_(std::move(command)), columns_(std::move(columns)) {}

void Table::add(std::vector<Cell> row) {
    require(row.size() == columns_.size(), ErrorKind::Numeric, "output row width does not match the header");
    rows_.push_back(std::move(row));
}

namespace {

std::string csv_cell(const Cell& c) {
    struct V {
        std::string operator()(double d) const { return format_number(d); }
        std::string operator()(long long i) const { return std::to_string(i); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string& s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string q = "\"";
            for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return q + "\"";
        }
    };
    return std::visit(V{}, c);
}

nlohmann::json json_cell(const Cell& c) {
    struct V {
        nlohmann::json operator()(double d) const {
            if (!std::isfinite(d)) return format_number(d);
            return std::stod(format_number(d));
        }
        nlohmann::json operator()(long long i) const { return i; }
        nlohmann::json operator()(bool b) const { return b; }
        nlohmann::json operator()(const std::string& s) const { return s; }
    };
    return std::visit(V{}, c);
}

}  // namespace

void Table::fill_column(const std::string& name, const Cell& value) {
    const auto it = std::find(columns_.begin(), columns_.end(), name);
    if (it == columns_.end()) return;
    const auto j = static_cast<std::size_t>(it - columns_.begin());
    for (auto& row : rows_) row[j] = value;
}

void Table::write(std::ostream& os, Format f) const {
    if (f == Format::Csv) {
        os << "# levyx " << command_ << " schema=" << kSchemaVersion << "\n";
        for (const auto& n : notes_) os << "# " << n << "\n";
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        os << "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
            os << "\n";
        }
        return;
    }
    for (const auto& r : rows_) {
        nlohmann::ordered_json j;
        j["command"] = command_;
        j["schema"] = kSchemaVersion;
        for (std::size_t i = 0; i < r.size(); ++i) j[columns_[i]] = json_cell(r[i]);
        os << j.dump() << "\n";
    }
    for (const auto& n : notes_) {
        nlohmann::ordered_json j;
        j["command"] = command_;
        j["note"] = n;
        os << j.dump() << "\n";
    }
}

}  // namespace levyx::cli
