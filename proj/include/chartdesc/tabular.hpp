#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace chartdesc {

enum class ColumnType { quantitative, nominal, ordinal, temporal };

std::string_view to_string(ColumnType t);
std::optional<ColumnType> column_type_from_string(std::string_view s);

/// One typed column. `raw` keeps the original cell text; `numeric` holds the
/// parsed value for quantitative cells and the decimal year for temporal
/// cells (NaN where missing or unparsable).
struct Column {
    std::string name;
    ColumnType ctype = ColumnType::nominal;
    std::vector<std::string> raw;
    std::vector<bool> missing;
    std::vector<double> numeric;

    std::size_t size() const { return raw.size(); }
    bool is_missing(std::size_t row) const { return missing[row]; }
    /// Non-missing numeric cells in row order.
    std::vector<double> numeric_values() const;
};

class Dataset {
public:
    Dataset() = default;
    /// Validates equal lengths and unique names.
    explicit Dataset(std::vector<Column> columns);

    const std::vector<Column>& columns() const { return columns_; }
    std::size_t row_count() const { return rows_; }
    std::size_t column_count() const { return columns_.size(); }

    const Column* find(std::string_view name) const;
    const Column& column(std::string_view name) const;

private:
    std::vector<Column> columns_;
    std::size_t rows_ = 0;
};

enum class TableFormat { csv, json };

/// Cells recognised as missing: empty, "NA", "null" (case-insensitive).
bool is_missing_marker(std::string_view cell);
std::optional<double> parse_number(std::string_view cell);
/// Parses YYYY-MM-DD, YYYY-MM, YYYY/MM/DD and ISO date-times into a decimal year.
std::optional<double> parse_date(std::string_view cell);
/// Inverse of parse_date for the date part, formatted as YYYY-MM-DD.
std::string format_iso_date(double decimal_year);

/// Builds a column from raw cells and infers its type: >= 90% of non-missing
/// cells parsing as numbers gives quantitative, as dates gives temporal,
/// anything else nominal. Unparsable cells in a promoted column become missing.
Column make_column(std::string name, std::vector<std::string> cells);

/// RFC 4180 records. Throws Error("ragged-rows") on inconsistent field counts.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

Dataset parse_table(std::string_view text, TableFormat format);
Dataset load_table(const std::filesystem::path& path, std::optional<TableFormat> format = std::nullopt);
/// Rows given as a JSON array of flat objects (already-serialized text).
Dataset dataset_from_json_rows(std::string_view json_text);

/// Throws Error(error_kind) when the file cannot be opened.
std::string read_text_file(const std::filesystem::path& path, const std::string& error_kind = "data-not-found");

enum class AggregateOp { mean, median, min, max, sum, count };

std::optional<AggregateOp> aggregate_op_from_string(std::string_view s);

struct GroupRow {
    std::vector<std::string> key;
    std::optional<double> value;  // nullopt for groups with no non-missing values
    std::size_t count = 0;
};

/// One row per distinct key, ordered lexicographically by key. Rows with a
/// missing group cell are skipped; missing values are excluded from the
/// aggregate (count included).
std::vector<GroupRow> group_aggregate(const Dataset& data,
                                      const std::vector<std::string>& group_by,
                                      const std::string& value,
                                      AggregateOp op);

double median_of(std::vector<double> values);

}  // namespace chartdesc
