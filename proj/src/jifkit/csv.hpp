#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace jifkit::detail {

// Splits one CSV record. Quoted fields may contain commas and doubled
// quotes; embedded newlines are not supported (inputs are line-oriented).
std::vector<std::string> split_csv_line(std::string_view line);

// Quotes the field only when it contains a comma, quote, or whitespace edge.
std::string csv_escape(std::string_view field);

}  // namespace jifkit::detail
