#pragma once

// Minimal delimited-text reader shared by the GTFS and native loaders.
// Handles RFC 4180 quoting for CSV; TSV fields are taken verbatim.

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "transit_hl/common.hpp"

namespace transit_hl::detail {

class TableReader {
public:
    TableReader(const std::filesystem::path &path, char delimiter);

    const std::string &file() const { return file_; }
    std::size_t line() const { return line_; }

    // Reads the next record into fields(); false at end of file.
    bool next();

    // Column index by header name.
    std::optional<std::size_t> column(std::string_view name) const;
    std::size_t require_column(std::string_view name) const;

    const std::string &field(std::size_t col) const;
    // Empty string when the column is absent or the record is short.
    std::string field_or_empty(std::optional<std::size_t> col) const;

    [[noreturn]] void fail(const std::string &what) const;

private:
    bool read_record(std::vector<std::string> &out);

    std::ifstream in_;
    std::string file_;
    char delimiter_;
    std::size_t line_ = 0;
    std::vector<std::string> header_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::string> fields_;
};

std::int64_t parse_int(const TableReader &reader, const std::string &text);
double parse_double(const TableReader &reader, const std::string &text);

}  // namespace transit_hl::detail
