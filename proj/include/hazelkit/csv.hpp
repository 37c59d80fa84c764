#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "hazelkit/errors.hpp"

namespace hazelkit::csv {

// RFC 4180 style reading and writing: fields with commas, quotes, or line
// breaks are quoted, quotes are doubled, rows end with \n.

inline std::string escape_field(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (const char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string make_row(const std::vector<std::string>& fields) {
    std::string row;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) row += ',';
        row += escape_field(fields[i]);
    }
    row += '\n';
    return row;
}

/// Parses a whole CSV document. Throws MalformedCsv with a 1-based row
/// number on stray or unterminated quotes.
inline std::vector<std::vector<std::string>> parse(std::string_view data) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string field;
    std::size_t row_number = 1;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_content = false;

    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        row_has_content = false;
        ++row_number;
    };

    std::size_t i = 0;
    while (i < data.size()) {
        const char c = data[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < data.size() && data[i + 1] == '"') {
                    field += '"';
                    i += 2;
                    continue;
                }
                in_quotes = false;
                ++i;
                if (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
                    throw MalformedCsv(row_number, "unexpected character after closing quote");
                }
                continue;
            }
            field += c;
            ++i;
            continue;
        }
        switch (c) {
            case '"':
                if (!field.empty() || field_was_quoted) {
                    throw MalformedCsv(row_number, "quote inside unquoted field");
                }
                in_quotes = true;
                field_was_quoted = true;
                row_has_content = true;
                ++i;
                break;
            case ',':
                end_field();
                row_has_content = true;
                ++i;
                break;
            case '\r':
                ++i;
                if (i < data.size() && data[i] == '\n') ++i;
                end_row();
                break;
            case '\n':
                ++i;
                end_row();
                break;
            default:
                field += c;
                row_has_content = true;
                ++i;
                break;
        }
    }
    if (in_quotes) throw MalformedCsv(row_number, "unterminated quoted field");
    if (row_has_content || !row.empty()) end_row();
    return rows;
}

}  // namespace hazelkit::csv
