// Copyright 2026 The macrocat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <json.hpp>

#include "macrocat/cli.h"

namespace macrocat::cli {

namespace {

// Length of the UTF-8 sequence starting at s[i], or 0 if invalid.
size_t utf8_length(std::string_view s, size_t i) {
    auto c = static_cast<unsigned char>(s[i]);
    size_t len = 0;
    unsigned min = 0;
    unsigned cp = 0;
    if (c < 0x80) {
        return 1;
    } else if ((c & 0xE0) == 0xC0) {
        len = 2;
        cp = c & 0x1F;
        min = 0x80;
    } else if ((c & 0xF0) == 0xE0) {
        len = 3;
        cp = c & 0x0F;
        min = 0x800;
    } else if ((c & 0xF8) == 0xF0) {
        len = 4;
        cp = c & 0x07;
        min = 0x10000;
    } else {
        return 0;
    }
    if (i + len > s.size()) {
        return 0;
    }
    for (size_t k = 1; k < len; k++) {
        auto cc = static_cast<unsigned char>(s[i + k]);
        if ((cc & 0xC0) != 0x80) {
            return 0;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        return 0;
    }
    return len;
}

double parse_double(const std::string &field, size_t line, const char *column) {
    double v = 0;
    const char *end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw CsvError(line, fmt::format("column {}: '{}' is not a number", column, field));
    }
    if (!std::isfinite(v)) {
        throw CsvError(line, fmt::format("column {}: value must be finite", column));
    }
    return v;
}

int parse_int(const std::string &field, size_t line, const char *column) {
    int v = 0;
    const char *end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (field.empty() || ec != std::errc() || ptr != end) {
        throw CsvError(line, fmt::format("column {}: '{}' is not an integer", column, field));
    }
    return v;
}

std::string cell_text(const Cell &cell) {
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    if (const auto *i = std::get_if<int64_t>(&cell)) {
        return std::to_string(*i);
    }
    return "";
}

// Display width in code points.
size_t display_width(std::string_view s) {
    size_t n = 0;
    for (char c : s) {
        if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
            n++;
        }
    }
    return n;
}

}  // namespace

CsvError::CsvError(size_t line, const std::string &message)
    : std::runtime_error(fmt::format("line {}: {}", line, message)), line_(line) {}

std::vector<CsvRecord> parse_csv(std::string_view text) {
    std::vector<CsvRecord> records;
    size_t line = 1;
    size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '\n') {
            line++;
            i++;
            continue;
        }
        CsvRecord rec{line, {}};
        std::string field;
        bool quoted = false;
        bool field_was_quoted = false;
        bool done = false;
        while (!done) {
            if (i >= text.size()) {
                if (quoted) {
                    throw CsvError(rec.line, "unterminated quoted field");
                }
                rec.fields.push_back(std::move(field));
                break;
            }
            char c = text[i];
            size_t len = utf8_length(text, i);
            if (len == 0) {
                throw CsvError(line, "invalid UTF-8");
            }
            if (len > 1) {
                field.append(text.substr(i, len));
                i += len;
                continue;
            }
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < text.size() && text[i + 1] == '"') {
                        field.push_back('"');
                        i += 2;
                    } else {
                        quoted = false;
                        i++;
                        if (i < text.size() && text[i] != ',' && text[i] != '\n') {
                            throw CsvError(line, "unexpected character after closing quote");
                        }
                    }
                    continue;
                }
                if (c == '\n') {
                    line++;
                }
                field.push_back(c);
                i++;
                continue;
            }
            switch (c) {
                case ',':
                    rec.fields.push_back(std::move(field));
                    field.clear();
                    field_was_quoted = false;
                    i++;
                    break;
                case '\n':
                    rec.fields.push_back(std::move(field));
                    line++;
                    i++;
                    done = true;
                    break;
                case '\r':
                    throw CsvError(line, "carriage return found; line endings must be \\n");
                case '"':
                    if (!field.empty() || field_was_quoted) {
                        throw CsvError(line, "quote inside unquoted field");
                    }
                    quoted = true;
                    field_was_quoted = true;
                    i++;
                    break;
                default:
                    field.push_back(c);
                    i++;
            }
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::string csv_escape(std::string_view field) {
    bool needs = field.find_first_of(",\"\n\r") != std::string_view::npos ||
                 (!field.empty() && (field.front() == ' ' || field.back() == ' '));
    if (!needs) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += "\"\"";
        } else {
            out.push_back(c);
        }
    }
    out.push_back('"');
    return out;
}

std::string format_number(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), ptr);
}

IngestResult read_experiments(std::string_view text, bool recompute) {
    IngestResult result;
    std::vector<CsvRecord> records = parse_csv(text);
    if (records.empty()) {
        return result;
    }
    std::vector<std::string> expected;
    for (auto part : {"label", "year", "v_minus", "mean_photon_number", "source_note"}) {
        expected.emplace_back(part);
    }
    const auto &header = records.front().fields;
    std::vector<std::string> full = expected;
    full.insert(full.end(), kDerivedColumns.begin(), kDerivedColumns.end());
    size_t width = expected.size();
    if (header == full) {
        if (!recompute) {
            throw CsvError(records.front().line, "derived columns present; pass --recompute to re-ingest");
        }
        width = full.size();
    } else if (header != expected) {
        throw CsvError(records.front().line, fmt::format("header must be '{}'", kIngestHeader));
    }
    for (size_t r = 1; r < records.size(); r++) {
        const CsvRecord &rec = records[r];
        if (rec.fields.size() != width) {
            throw CsvError(rec.line, fmt::format("expected {} fields, found {}", width, rec.fields.size()));
        }
        ExperimentRecord e;
        e.label = rec.fields[0];
        e.year = parse_int(rec.fields[1], rec.line, "year");
        e.v_minus = parse_double(rec.fields[2], rec.line, "v_minus");
        if (!rec.fields[3].empty()) {
            double n = parse_double(rec.fields[3], rec.line, "mean_photon_number");
            if (n < 0) {
                throw CsvError(rec.line, "column mean_photon_number: must be nonnegative");
            }
            e.mean_photon_number = n;
        }
        e.source_note = rec.fields[4];
        if (!(e.v_minus > 0)) {
            result.skipped.push_back({rec.line, fmt::format("v_minus = {} is not positive", rec.fields[2])});
            continue;
        }
        result.records.push_back(std::move(e));
    }
    return result;
}

nlohmann::json cell_to_json(const Cell &cell) {
    if (const auto *s = std::get_if<std::string>(&cell)) {
        return *s;
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) {
            return format_number(*d);
        }
        return *d;
    }
    if (const auto *i = std::get_if<int64_t>(&cell)) {
        return *i;
    }
    return nullptr;
}

std::string render(const Table &table, Format format) {
    std::string out;
    if (format == Format::Json) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &row : table.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (size_t c = 0; c < table.columns.size() && c < row.size(); c++) {
                obj[table.columns[c]] = cell_to_json(row[c]);
            }
            arr.push_back(std::move(obj));
        }
        return arr.dump(2) + "\n";
    }
    if (format == Format::Csv) {
        for (size_t c = 0; c < table.columns.size(); c++) {
            out += (c ? "," : "") + csv_escape(table.columns[c]);
        }
        out += "\n";
        for (const auto &row : table.rows) {
            for (size_t c = 0; c < row.size(); c++) {
                out += (c ? "," : "") + csv_escape(cell_text(row[c]));
            }
            out += "\n";
        }
        return out;
    }
    std::vector<size_t> widths(table.columns.size(), 0);
    for (size_t c = 0; c < table.columns.size(); c++) {
        widths[c] = display_width(table.columns[c]);
    }
    std::vector<std::vector<std::string>> text;
    for (const auto &row : table.rows) {
        std::vector<std::string> cells;
        for (size_t c = 0; c < row.size(); c++) {
            cells.push_back(cell_text(row[c]));
            widths[c] = std::max(widths[c], display_width(cells.back()));
        }
        text.push_back(std::move(cells));
    }
    auto emit = [&](const std::vector<std::string> &cells) {
        std::string line;
        for (size_t c = 0; c < cells.size(); c++) {
            if (c) {
                line += "  ";
            }
            line += cells[c];
            if (c + 1 < cells.size()) {
                line.append(widths[c] - display_width(cells[c]), ' ');
            }
        }
        out += line + "\n";
    };
    emit(table.columns);
    for (const auto &cells : text) {
        emit(cells);
    }
    return out;
}

}  // namespace macrocat::cli
