#include "chartdesc/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

namespace chartdesc {

namespace {

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

std::string group_thousands(const std::string& digits) {
    std::string out;
    const std::size_t n = digits.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

}  // namespace

bool unit_is_symbol(std::string_view unit) {
    if (unit.empty()) return true;
    if (unit == "%" || unit == "‰" || unit == "x") return true;
    return unit.rfind("°", 0) == 0;
}

std::string format_number(double value, std::optional<std::string_view> unit) {
    double rounded = std::round(value * 100.0) / 100.0;
    if (rounded == 0.0) rounded = 0.0;  // no "-0"
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", std::fabs(rounded));
    std::string s = buf;
    const auto dot = s.find('.');
    std::string int_part = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (std::fabs(rounded) >= 10000.0) int_part = group_thousands(int_part);

    std::string out = rounded < 0 ? "-" : "";
    out += int_part;
    if (!frac.empty()) out += "." + frac;
    if (unit && !unit->empty()) {
        if (!unit_is_symbol(*unit)) out.push_back(' ');
        out.append(*unit);
    }
    return out;
}

std::string join_comma(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += items[i];
    }
    return out;
}

std::string join_and(const std::vector<std::string>& items) {
    if (items.empty()) return "";
    if (items.size() == 1) return items.front();
    if (items.size() == 2) return items[0] + " and " + items[1];
    std::string out;
    for (std::size_t i = 0; i + 1 < items.size(); ++i) out += items[i] + ", ";
    return out + "and " + items.back();
}

std::string lower_label(std::string_view label) {
    std::string out(label);
    std::size_t i = 0;
    while (i < out.size()) {
        while (i < out.size() && out[i] == ' ') ++i;
        std::size_t j = i;
        while (j < out.size() && out[j] != ' ') ++j;
        // Title-case word: one leading capital, no other capitals.
        if (j > i && is_upper(out[i]) && std::none_of(out.begin() + static_cast<long>(i) + 1,
                                                       out.begin() + static_cast<long>(j), is_upper)) {
            const bool has_lower = std::any_of(out.begin() + static_cast<long>(i) + 1,
                                               out.begin() + static_cast<long>(j), is_lower);
            if (has_lower)
                out[i] = static_cast<char>(std::tolower(static_cast<unsigned char>(out[i])));
        }
        i = j;
    }
    return out;
}

std::string capitalize_first(std::string_view s) {
    std::string out(s);
    if (!out.empty() && is_lower(out.front()))
        out.front() = static_cast<char>(std::toupper(static_cast<unsigned char>(out.front())));
    return out;
}

std::string title_case(std::string_view s) {
    std::string out(s);
    bool start = true;
    for (char& c : out) {
        if (c == ' ') {
            start = true;
        } else {
            if (start && is_lower(c)) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
            start = false;
        }
    }
    return out;
}

std::string normalize_whitespace(std::string_view s) {
    std::string out;
    bool pending_space = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
        } else {
            if (pending_space) out.push_back(' ');
            pending_space = false;
            out.push_back(c);
        }
    }
    return out;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

}  // namespace chartdesc
