#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chartdesc {

/// At most two decimals, trailing zeros stripped, thousands separators from
/// 10000 up. Symbol units attach directly ("15%"), word units take a space
/// ("60 years").
std::string format_number(double value, std::optional<std::string_view> unit = std::nullopt);

/// True for units written without a separating space ("%", "‰", "°C").
bool unit_is_symbol(std::string_view unit);

/// "a, b, c" with no conjunction.
std::string join_comma(const std::vector<std::string>& items);
/// "a", "a and b", "a, b, and c".
std::string join_and(const std::vector<std::string>& items);

/// Lowercases words written in title case ("Low Income Countries" ->
/// "low income countries") and leaves acronyms and mixed-case words alone.
std::string lower_label(std::string_view label);
std::string capitalize_first(std::string_view s);
/// Capitalizes the first letter of every word ("years" -> "Years").
std::string title_case(std::string_view s);
/// Collapses runs of whitespace to one space and trims the ends.
std::string normalize_whitespace(std::string_view s);

std::string to_lower_ascii(std::string_view s);

}  // namespace chartdesc
