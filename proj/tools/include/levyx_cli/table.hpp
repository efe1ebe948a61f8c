#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace levyx::cli {

enum class Format { Csv, JsonLines };

Format format_from_string(const std::string& s);

using Cell = std::variant<double, long long, bool, std::string>;

/// Row-oriented output. CSV starts with a schema comment and a header; numbers
/// use 10 significant digits.
class Table {
public:
    static constexpr int kSchemaVersion = 1;

    Table(std::string command, std::vector<std::string> columns);

    void add(std::vector<Cell> row);
    void note(const std::string& line) { notes_.push_back(line); }
    /// Overwrite every cell of a column (no-op when absent).
    void fill_column(const std::string& name, const Cell& value);

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }

    void write(std::ostream& os, Format f) const;

private:
    std::string command_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::string> notes_;
};

std::string format_number(double v);

}  // namespace levyx::cli
