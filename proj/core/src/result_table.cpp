#include <charconv>
#include <cmath>
#include <stdexcept>

#include "vmimo/experiments.hpp"

namespace vmimo {

std::string format_value(double value) {
    if (std::isnan(value)) return "nan";
    char buffer[32];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) throw std::runtime_error("failed to format value");
    return std::string(buffer, ptr);
}

const ResultTable::Column* ResultTable::find(std::string_view name) const {
    for (const Column& column : columns)
        if (column.name == name) return &column;
    return nullptr;
}

void ResultTable::add_metadata(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
}

std::string ResultTable::data_rows_csv() const {
    std::string out;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (c) out += ',';
        out += columns[c].name;
    }
    if (!row_warnings.empty()) out += ",warning";
    out += '\n';

    const std::size_t n = rows();
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out += ',';
            out += format_value(columns[c].values[r]);
        }
        if (!row_warnings.empty()) {
            out += ',';
            out += row_warnings[r];
        }
        out += '\n';
    }
    return out;
}

std::string ResultTable::to_csv() const {
    std::string out;
    for (const auto& [key, value] : metadata) {
        out += "# ";
        out += key;
        out += ": ";
        out += value;
        out += '\n';
    }
    out += data_rows_csv();
    return out;
}

}  // namespace vmimo
