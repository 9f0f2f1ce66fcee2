#include "chartdesc/tabular.hpp"

#include "chartdesc/error.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace chartdesc {

namespace {

constexpr double kPromotionShare = 0.9;

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Days since 1970-01-01 for a proleptic Gregorian date (Hinnant's algorithm).
long days_from_civil(long y, unsigned m, unsigned d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

bool is_leap(long y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(long y, unsigned m) {
    static constexpr unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    return m == 2 && is_leap(y) ? 29 : kDays[m - 1];
}

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string cell_from_json(const nlohmann::ordered_json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v.get<double>());
        return std::string(buf, ptr);
    }
    throw Error("invalid-table", "table cells must be scalar values");
}

}  // namespace

std::string_view to_string(ColumnType t) {
    switch (t) {
        case ColumnType::quantitative: return "quantitative";
        case ColumnType::nominal: return "nominal";
        case ColumnType::ordinal: return "ordinal";
        case ColumnType::temporal: return "temporal";
    }
    return "nominal";
}

std::optional<ColumnType> column_type_from_string(std::string_view s) {
    if (s == "quantitative") return ColumnType::quantitative;
    if (s == "nominal") return ColumnType::nominal;
    if (s == "ordinal") return ColumnType::ordinal;
    if (s == "temporal") return ColumnType::temporal;
    return std::nullopt;
}

std::vector<double> Column::numeric_values() const {
    std::vector<double> out;
    out.reserve(numeric.size());
    for (std::size_t i = 0; i < numeric.size(); ++i)
        if (!missing[i] && std::isfinite(numeric[i])) out.push_back(numeric[i]);
    return out;
}

Dataset::Dataset(std::vector<Column> columns) : columns_(std::move(columns)) {
    std::set<std::string> names;
    for (const auto& c : columns_) {
        if (!names.insert(c.name).second) throw Error("duplicate-header", "duplicate column name '" + c.name + "'");
    }
    rows_ = columns_.empty() ? 0 : columns_.front().size();
    for (const auto& c : columns_) {
        if (c.size() != rows_ || c.missing.size() != rows_ || c.numeric.size() != rows_)
            throw Error("ragged-rows", "column '" + c.name + "' length differs from the table");
    }
}

const Column* Dataset::find(std::string_view name) const {
    for (const auto& c : columns_)
        if (c.name == name) return &c;
    return nullptr;
}

const Column& Dataset::column(std::string_view name) const {
    if (const Column* c = find(name)) return *c;
    throw Error("missing-column", "no column named '" + std::string(name) + "'");
}

bool is_missing_marker(std::string_view cell) {
    const auto t = lower(trim(cell));
    return t.empty() || t == "na" || t == "null";
}

std::optional<double> parse_number(std::string_view cell) {
    auto t = trim(cell);
    if (t.empty()) return std::nullopt;
    if (t.front() == '+') t.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<double> parse_date(std::string_view cell) {
    auto t = trim(cell);
    if (auto pos = t.find_first_of("T "); pos != std::string_view::npos) t = t.substr(0, pos);
    const char sep = t.size() > 4 ? t[4] : '\0';
    if (sep != '-' && sep != '/') return std::nullopt;
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= t.size(); ++i) {
        if (i == t.size() || t[i] == sep) {
            parts.push_back(t.substr(start, i - start));
            start = i + 1;
        }
    }
    if (parts.size() < 2 || parts.size() > 3) return std::nullopt;
    if (parts[0].size() != 4) return std::nullopt;
    for (auto p : parts)
        if (!all_digits(p) || p.size() > 4) return std::nullopt;
    const long y = std::stol(std::string(parts[0]));
    const unsigned m = static_cast<unsigned>(std::stoul(std::string(parts[1])));
    const unsigned d = parts.size() == 3 ? static_cast<unsigned>(std::stoul(std::string(parts[2]))) : 1;
    if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m)) return std::nullopt;
    const long day_of_year = days_from_civil(y, m, d) - days_from_civil(y, 1, 1);
    return static_cast<double>(y) + static_cast<double>(day_of_year) / (is_leap(y) ? 366.0 : 365.0);
}

std::string format_iso_date(double decimal_year) {
    long y = static_cast<long>(std::floor(decimal_year));
    const double frac = decimal_year - static_cast<double>(y);
    long doy = std::lround(frac * (is_leap(y) ? 366.0 : 365.0));
    if (doy >= (is_leap(y) ? 366 : 365)) {
        ++y;
        doy = 0;
    }
    unsigned m = 1;
    while (doy >= static_cast<long>(days_in_month(y, m))) {
        doy -= days_in_month(y, m);
        ++m;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04ld-%02u-%02ld", y, m, doy + 1);
    return buf;
}

Column make_column(std::string name, std::vector<std::string> cells) {
    Column col;
    col.name = std::move(name);
    const std::size_t n = cells.size();
    col.missing.resize(n);
    col.numeric.assign(n, std::numeric_limits<double>::quiet_NaN());

    std::size_t present = 0, numeric_ok = 0, date_ok = 0;
    std::vector<std::optional<double>> as_number(n), as_date(n);
    for (std::size_t i = 0; i < n; ++i) {
        col.missing[i] = is_missing_marker(cells[i]);
        if (col.missing[i]) continue;
        ++present;
        as_number[i] = parse_number(cells[i]);
        as_date[i] = parse_date(cells[i]);
        numeric_ok += as_number[i].has_value();
        date_ok += as_date[i].has_value();
    }

    const auto promotes = [&](std::size_t ok) {
        return present > 0 && static_cast<double>(ok) >= kPromotionShare * static_cast<double>(present);
    };
    const std::vector<std::optional<double>>* parsed = nullptr;
    if (promotes(numeric_ok)) {
        col.ctype = ColumnType::quantitative;
        parsed = &as_number;
    } else if (promotes(date_ok)) {
        col.ctype = ColumnType::temporal;
        parsed = &as_date;
    } else {
        col.ctype = ColumnType::nominal;
    }
    if (parsed) {
        for (std::size_t i = 0; i < n; ++i) {
            if (col.missing[i]) continue;
            if ((*parsed)[i]) col.numeric[i] = *(*parsed)[i];
            else col.missing[i] = true;
        }
    } else {
        for (std::size_t i = 0; i < n; ++i)
            if (!col.missing[i]) col.numeric[i] = parse_number(cells[i]).value_or(col.numeric[i]);
    }
    col.raw = std::move(cells);
    return col;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> record;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;
    std::size_t record_line = 1;

    if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

    const auto end_record = [&] {
        record.push_back(std::move(field));
        field.clear();
        const bool blank = record.size() == 1 && record.front().empty() && !field_started;
        if (!blank) {
            if (!records.empty() && record.size() != records.front().size())
                throw Error("ragged-rows",
                            "row at line " + std::to_string(record_line) + " has " + std::to_string(record.size()) +
                                " fields, expected " + std::to_string(records.front().size()),
                            record_line);
            records.push_back(std::move(record));
        }
        record.clear();
        field_started = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
            case '"':
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                record.push_back(std::move(field));
                field.clear();
                field_started = true;
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                record_line = line;
                break;
            default:
                field.push_back(c);
                field_started = true;
        }
    }
    if (in_quotes) throw Error("syntax", "unterminated quoted field", record_line);
    if (field_started || !field.empty() || !record.empty()) end_record();
    return records;
}

Dataset dataset_from_json_rows(std::string_view json_text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("syntax", std::string("invalid JSON table: ") + e.what(), e.byte);
    }
    if (!doc.is_array()) throw Error("invalid-table", "JSON table must be an array of objects");

    std::vector<std::string> names;
    std::map<std::string, std::size_t> index;
    for (const auto& row : doc) {
        if (!row.is_object()) throw Error("invalid-table", "JSON table rows must be objects");
        for (const auto& [k, v] : row.items()) {
            if (index.emplace(k, names.size()).second) names.push_back(k);
        }
    }
    std::vector<std::vector<std::string>> cells(names.size(), std::vector<std::string>(doc.size()));
    for (std::size_t r = 0; r < doc.size(); ++r) {
        for (const auto& [k, v] : doc[r].items()) cells[index[k]][r] = cell_from_json(v);
    }
    std::vector<Column> cols;
    for (std::size_t c = 0; c < names.size(); ++c) cols.push_back(make_column(names[c], std::move(cells[c])));
    return Dataset(std::move(cols));
}

Dataset parse_table(std::string_view text, TableFormat format) {
    if (format == TableFormat::json) return dataset_from_json_rows(text);

    auto records = parse_csv(text);
    if (records.empty()) throw Error("invalid-table", "CSV input needs a header row");
    const auto& header = records.front();
    std::vector<Column> cols;
    cols.reserve(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        std::vector<std::string> cells;
        cells.reserve(records.size() - 1);
        for (std::size_t r = 1; r < records.size(); ++r) cells.push_back(records[r][c]);
        cols.push_back(make_column(std::string(trim(header[c])), std::move(cells)));
    }
    return Dataset(std::move(cols));
}

std::string read_text_file(const std::filesystem::path& path, const std::string& error_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in || std::filesystem::is_directory(path)) throw Error(error_kind, "cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Dataset load_table(const std::filesystem::path& path, std::optional<TableFormat> format) {
    const auto text = read_text_file(path);
    if (!format) format = lower(path.extension().string()) == ".json" ? TableFormat::json : TableFormat::csv;
    return parse_table(text, *format);
}

std::optional<AggregateOp> aggregate_op_from_string(std::string_view s) {
    if (s == "mean") return AggregateOp::mean;
    if (s == "median") return AggregateOp::median;
    if (s == "min") return AggregateOp::min;
    if (s == "max") return AggregateOp::max;
    if (s == "sum") return AggregateOp::sum;
    if (s == "count") return AggregateOp::count;
    return std::nullopt;
}

double median_of(std::vector<double> values) {
    if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<GroupRow> group_aggregate(const Dataset& data,
                                      const std::vector<std::string>& group_by,
                                      const std::string& value,
                                      AggregateOp op) {
    std::vector<const Column*> keys;
    for (const auto& g : group_by) keys.push_back(&data.column(g));
    const Column& val = data.column(value);
    if (val.ctype != ColumnType::quantitative)
        throw Error("type-mismatch", "aggregated column '" + value + "' is not quantitative");

    std::map<std::vector<std::string>, std::vector<double>> groups;
    for (std::size_t r = 0; r < data.row_count(); ++r) {
        std::vector<std::string> key;
        bool skip = false;
        for (const Column* k : keys) {
            if (k->is_missing(r)) {
                skip = true;
                break;
            }
            key.push_back(k->raw[r]);
        }
        if (skip) continue;
        auto& bucket = groups[key];
        if (!val.is_missing(r)) bucket.push_back(val.numeric[r]);
    }

    std::vector<GroupRow> out;
    out.reserve(groups.size());
    for (auto& [key, vals] : groups) {
        GroupRow row{key, std::nullopt, vals.size()};
        if (op == AggregateOp::count) {
            row.value = static_cast<double>(vals.size());
        } else if (!vals.empty()) {
            std::sort(vals.begin(), vals.end());
            const double sum = std::accumulate(vals.begin(), vals.end(), 0.0);
            switch (op) {
                case AggregateOp::mean:
                    row.value = std::clamp(sum / static_cast<double>(vals.size()), vals.front(), vals.back());
                    break;
                case AggregateOp::median: row.value = median_of(vals); break;
                case AggregateOp::min: row.value = vals.front(); break;
                case AggregateOp::max: row.value = vals.back(); break;
                case AggregateOp::sum: row.value = sum; break;
                case AggregateOp::count: break;
            }
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace chartdesc
