#include "table_reader.hpp"

#include <charconv>

namespace transit_hl::detail {

namespace {

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && s[b] == ' ') ++b;
    return s.substr(b);
}

}  // namespace

TableReader::TableReader(const std::filesystem::path &path, char delimiter)
    : in_(path), file_(path.string()), delimiter_(delimiter) {
    if (!in_) throw InputError("cannot open " + file_);
    if (!read_record(header_)) fail("missing header line");
    if (!header_.empty() && header_[0].starts_with("\xEF\xBB\xBF")) {
        header_[0] = header_[0].substr(3);  // UTF-8 BOM
    }
    for (std::size_t i = 0; i < header_.size(); ++i) {
        index_.emplace(trim(header_[i]), i);
    }
}

bool TableReader::read_record(std::vector<std::string> &out) {
    out.clear();
    std::string line;
    while (true) {
        if (!std::getline(in_, line)) return false;
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) break;
    }
    if (delimiter_ == '\t') {
        std::size_t start = 0;
        while (true) {
            std::size_t pos = line.find('\t', start);
            out.push_back(line.substr(start, pos - start));
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return true;
    }
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0;; ++i) {
        if (i == line.size()) {
            if (!quoted) break;
            // quoted field spanning lines
            std::string more;
            if (!std::getline(in_, more)) fail("unterminated quoted field");
            ++line_;
            if (!more.empty() && more.back() == '\r') more.pop_back();
            cur.push_back('\n');
            line = std::move(more);
            i = static_cast<std::size_t>(-1);
            continue;
        }
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == delimiter_) {
            out.push_back(trim(std::move(cur)));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(std::move(cur)));
    return true;
}

bool TableReader::next() { return read_record(fields_); }

std::optional<std::size_t> TableReader::column(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t TableReader::require_column(std::string_view name) const {
    auto c = column(name);
    if (!c) throw ParseError(file_, 1, "missing column '" + std::string(name) + "'");
    return *c;
}

const std::string &TableReader::field(std::size_t col) const {
    if (col >= fields_.size()) fail("record has too few fields");
    return fields_[col];
}

std::string TableReader::field_or_empty(std::optional<std::size_t> col) const {
    if (!col || *col >= fields_.size()) return {};
    return fields_[*col];
}

void TableReader::fail(const std::string &what) const {
    throw ParseError(file_, line_, what);
}

std::int64_t parse_int(const TableReader &reader, const std::string &text) {
    std::int64_t v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || p != text.data() + text.size()) {
        reader.fail("invalid integer '" + text + "'");
    }
    return v;
}

double parse_double(const TableReader &reader, const std::string &text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) reader.fail("invalid number '" + text + "'");
        return v;
    } catch (const std::logic_error &) {
        reader.fail("invalid number '" + text + "'");
    }
}

}  // namespace transit_hl::detail
