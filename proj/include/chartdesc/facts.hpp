#pragma once

#include "chartdesc/config.hpp"
#include "chartdesc/tabular.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace chartdesc {

/// Wording inputs a fact carries into realization. Filled in by the
/// composition pipeline; the statistics themselves never read these.
struct FactLabels {
    std::string measure;          // "Mortality rate"
    std::string measure_phrase;   // "COVID-19 mortality rate"; falls back to measure
    std::string category;         // name of the category axis ("Age")
    std::string x_label;
    std::string y_label;
    std::optional<std::string> unit;
    std::string variant;  // template variant: "bins", "series", "axes" or empty
    std::string x_phrase; // "over time", "as age increases"
    std::string color_label;  // legend title for multi-series facts
    bool temporal = false;
};

/// Columns and group keys a fact was computed from; also the dedup key.
struct Provenance {
    std::vector<std::string> columns;
    std::vector<std::string> groups;

    bool operator==(const Provenance&) const = default;
    auto operator<=>(const Provenance&) const = default;
};

enum class FactKind { summary_stats, extremum, outliers, correlation, comparison, shared_value, group_means };
std::string_view to_string(FactKind k);

struct SummaryStats {
    double mean = 0, median = 0, stdev = 0, min = 0, max = 0;  // stdev is the population one
    std::size_t n = 0;
};

struct Extremum {
    std::vector<std::string> max_categories;
    double max_value = 0;
    std::vector<std::string> min_categories;
    double min_value = 0;
};

struct Outliers {
    std::vector<double> values;
    std::vector<std::size_t> rows;
    std::vector<std::string> labels;  // category per outlier, filled in by callers that know it
    double q1 = 0, q3 = 0, lower_fence = 0, upper_fence = 0;
};

enum class Strength { weak, moderate, strong };
enum class Direction { positive, negative };
std::string_view to_string(Strength s);
std::string_view to_string(Direction d);

struct Correlation {
    double r = 0;
    Strength strength = Strength::weak;
    Direction direction = Direction::positive;
    std::size_t n = 0;
};

enum class Relation { greater, less, equal };
std::string_view to_string(Relation r);

struct Comparison {
    std::string a_label;
    double a = 0;
    std::string b_label;
    double b = 0;
    Relation relation = Relation::equal;
    double difference = 0;           // a - b
    double relative_difference = 0;  // (a - b) / |b|; 0 when b == 0
};

struct SharedValue {
    std::vector<std::vector<std::string>> groups;
    std::vector<double> values;  // representative value per group
};

struct GroupMeans {
    std::string group;                                   // outer key, e.g. "low income countries"
    std::vector<std::pair<std::string, double>> means;   // inner key -> mean
};

using FactPayload = std::variant<SummaryStats, Extremum, Outliers, Correlation, Comparison, SharedValue, GroupMeans>;

struct Fact {
    FactKind kind;
    int level = 2;
    FactPayload payload;
    Provenance provenance;
    FactLabels labels;
};

using LabeledValue = std::pair<std::string, double>;

// All operations throw chartdesc::Error on violated preconditions.

/// Mean, median, population stdev, extrema over the non-missing cells.
Fact summary_stats(const Column& col);
/// Ties come back as category lists in input order.
Fact find_extrema(const std::vector<LabeledValue>& series);
/// Tukey fences on linearly interpolated quartiles; needs >= 4 values.
Fact detect_outliers(const Column& col);
/// Pearson r over pairwise-complete rows; needs >= 3 rows and two non-constant columns.
Fact correlation(const Column& x, const Column& y, const Thresholds& t = {});
Fact compare_points(const LabeledValue& a, const LabeledValue& b);
/// Maximal groups (size >= 2) whose values lie pairwise within the relative tolerance.
Fact shared_value_groups(const std::vector<LabeledValue>& series, double tolerance = 1e-9);
Fact group_means(std::string group, std::vector<std::pair<std::string, double>> means);

/// Linear-interpolation quantile of sorted data (type 7).
double quantile_sorted(const std::vector<double>& sorted, double p);
Strength strength_for(double r, const Thresholds& t = {});

}  // namespace chartdesc
