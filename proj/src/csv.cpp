#include "apoa/csv.hpp"

#include <array>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>

namespace apoa {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) return std::to_string(value);
    return std::string(buf.data(), end);
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current += c;
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string quote_csv_field(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

constexpr std::array<std::string_view, 7> kColumns = {"app_id", "category", "rating", "power_w",
                                                       "cpu_pct", "mem_mb", "net_mb"};

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

double parse_number(const std::string& text, std::size_t row, std::size_t column) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw Error(ErrorCode::ParseError,
                    "row " + std::to_string(row) + ", column " + std::to_string(column) + " (" +
                        std::string(kColumns[column - 1]) + "): '" + text + "' is not a number",
                    ErrorLocation{{}, row, column, std::string(kColumns[column - 1])});
    }
    return value;
}

}  // namespace

AppRecord parse_app_row(std::string_view line, std::size_t row) {
    auto fields = split_csv_line(strip_cr(line));
    if (fields.size() != kColumns.size()) {
        throw Error(ErrorCode::ParseError,
                    "row " + std::to_string(row) + ": expected 7 fields, found " + std::to_string(fields.size()),
                    ErrorLocation{{}, row, {}, ""});
    }
    AppRecord r;
    r.app_id = fields[0];
    r.category_id = fields[1];
    r.rating = parse_number(fields[2], row, 3);
    r.power_w = parse_number(fields[3], row, 4);
    r.cpu_pct = parse_number(fields[4], row, 5);
    r.mem_mb = parse_number(fields[5], row, 6);
    r.net_mb = parse_number(fields[6], row, 7);
    return r;
}

CategoryCatalog parse_catalog_csv(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    std::vector<AppRecord> records;
    std::vector<std::size_t> rows;
    std::size_t row = 0;
    bool header_seen = false;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = strip_cr(text.substr(start, end - start));
        start = end + 1;
        ++row;
        if (!header_seen) {
            if (line != kCatalogHeader) {
                throw Error(ErrorCode::ParseError,
                            "header must be exactly '" + std::string(kCatalogHeader) + "'",
                            ErrorLocation{{}, row, {}, "header"});
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;
        records.push_back(parse_app_row(line, row));
        rows.push_back(row);
    }
    if (!header_seen) {
        throw Error(ErrorCode::ParseError, "missing header", ErrorLocation{{}, std::size_t{1}, {}, "header"});
    }

    try {
        return validate_catalog(std::move(records));
    } catch (const Error& e) {
        ErrorLocation loc = e.location();
        std::string prefix;
        if (loc.record_index && *loc.record_index < rows.size()) {
            loc.row = rows[*loc.record_index];
            for (std::size_t c = 0; c < kColumns.size(); ++c) {
                if (kColumns[c] == loc.field) loc.column = c + 1;
            }
            prefix = "row " + std::to_string(*loc.row) + ": ";
        }
        throw Error(ErrorCode::ValidationError, prefix + std::string(error_code_name(e.code())) + ": " + e.what(), loc);
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

CategoryCatalog load_catalog(const std::filesystem::path& path) { return parse_catalog_csv(read_text_file(path)); }

std::string serialize_app_row(const AppRecord& r) {
    std::string line = quote_csv_field(r.app_id);
    line += ',';
    line += quote_csv_field(r.category_id);
    for (double v : {r.rating, r.power_w, r.cpu_pct, r.mem_mb, r.net_mb}) {
        line += ',';
        line += format_double(v);
    }
    return line;
}

std::string serialize_catalog_csv(const CategoryCatalog& catalog) {
    std::string out(kCatalogHeader);
    out += '\n';
    for (const auto& category : catalog.categories()) {
        for (const auto& app : category.apps) {
            out += serialize_app_row(app);
            out += '\n';
        }
    }
    return out;
}

std::string catalog_fingerprint(const CategoryCatalog& catalog) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_catalog_csv(catalog)) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
        hash >>= 4;
    }
    return out;
}

}  // namespace apoa
