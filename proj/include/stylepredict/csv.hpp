#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace stylepredict::csv {

// Quote a field if it contains a comma, quote, or newline.
std::string escape(std::string_view field);

// Split one CSV record. Handles quoted fields with doubled quotes.
std::vector<std::string> split(std::string_view line);

// Metric values are persisted as decimal text with 6 significant digits.
std::string format_metric(double value);

} // namespace stylepredict::csv
