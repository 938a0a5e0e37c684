#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace dms::csv {

// Shortest decimal form that reads back to the same double ("." decimal).
std::string format_number(double v);

// Quotes a field when it holds a comma, quote, or line break.
std::string escape(std::string_view field);

std::string row(const std::vector<std::string>& fields);

// Splits one CSV line, honoring quotes.
std::vector<std::string> parse_row(std::string_view line);

}  // namespace dms::csv
