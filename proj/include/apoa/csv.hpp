#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "apoa/domain.hpp"

namespace apoa {

inline constexpr std::string_view kCatalogHeader = "app_id,category,rating,power_w,cpu_pct,mem_mb,net_mb";

/// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

/// Splits one CSV line. Fields may be double-quoted ("" escapes a quote).
std::vector<std::string> split_csv_line(std::string_view line);
std::string quote_csv_field(std::string_view field);

/// Parses one data row of the catalog schema. `row` is the 1-based file line
/// used in ParseError locations. Records are not range-validated here.
AppRecord parse_app_row(std::string_view line, std::size_t row = 0);

/// Parses and validates catalog CSV text. ParseError carries row/column;
/// validation failures become ValidationError with the offending row attached.
CategoryCatalog parse_catalog_csv(std::string_view text);
CategoryCatalog load_catalog(const std::filesystem::path& path);

std::string serialize_catalog_csv(const CategoryCatalog& catalog);
std::string serialize_app_row(const AppRecord& record);

/// 64-bit FNV-1a over the canonical CSV serialization, as 16 hex digits.
std::string catalog_fingerprint(const CategoryCatalog& catalog);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace apoa
