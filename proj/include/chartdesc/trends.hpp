#pragma once

#include "chartdesc/config.hpp"
#include "chartdesc/facts.hpp"

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace chartdesc {

// Level 3 content depends on who is looking at the chart. Everything here is
// a mechanical stand-in for that judgement, so every TrendFact is flagged
// heuristic and the thresholds live in Thresholds.

struct Point {
    double x = 0;
    double y = 0;
};
using Series = std::vector<Point>;

struct LinearFit {
    double slope = 0;
    double intercept = 0;
    double r2 = 1;  // 1 when y is constant
    double at(double x) const { return intercept + slope * x; }
};

/// Ordinary least squares of y on x. Needs >= 2 points with distinct x.
LinearFit fit_line(std::span<const double> xs, std::span<const double> ys);

enum class TrendKind { direction, fluctuation, exception_window, dispersion_compare, separation, growth_shape };
std::string_view to_string(TrendKind k);

enum class TrendDirection { increasing, decreasing, flat };
std::string_view to_string(TrendDirection d);

struct TrendClassification {
    TrendDirection direction = TrendDirection::flat;
    bool fluctuating = false;
    double slope = 0;
    double normalized_slope = 0;  // slope on min-max normalized x and y
    double r2 = 1;
    int sign_changes = 0;
};

struct ExceptionWindow {
    double start = 0;
    double end = 0;
    std::vector<std::string> series;  // series that dipped inside the window
    std::size_t series_total = 0;
};

struct DispersionComparison {
    std::vector<std::pair<std::string, double>> scores;  // most scattered first
};

struct SeparationResult {
    std::string a;
    std::string b;
    double score = 0;  // +inf when both groups are single points apart
    double centroid_distance = 0;
    double spread_sum = 0;
    bool gap = false;
};

struct GrowthShape {
    bool exponential = false;
    double r2_linear = 0;
    double r2_log = 0;
};

using TrendPayload = std::variant<TrendClassification, ExceptionWindow, DispersionComparison, SeparationResult, GrowthShape>;

struct TrendFact {
    TrendKind kind;
    int level = 3;
    bool heuristic = true;
    TrendPayload payload;
    Provenance provenance;
    FactLabels labels;
};

/// Least-squares direction plus fluctuation flag. kind is `fluctuation` when
/// the series is flat but fluctuating, `direction` otherwise.
TrendFact classify_trend(const Series& series, const Thresholds& t = {});

/// Windows where at least the quorum of series sit more than
/// exception_sigma residual deviations below a line fitted to the
/// neighbourhood (window < |dx| <= 3 * window) of each point. Flagged x
/// positions closer than `window` merge into one window.
std::vector<TrendFact> detect_exceptions(const std::map<std::string, Series>& multi, double window,
                                         const Thresholds& t = {});

/// RMS distance to the group centroid, both axes min-max normalized over all groups.
TrendFact dispersion_compare(const std::map<std::string, Series>& groups);

/// Centroid distance over the summed dispersion scores; gap when above gap_ratio.
TrendFact separation(const std::string& a_label, const Series& a, const std::string& b_label, const Series& b,
                     const Thresholds& t = {});

/// Compares y ~ x with log(y) ~ x; exponential-like when the log fit wins by growth_margin.
TrendFact growth_shape(const Series& series, const Thresholds& t = {});

}  // namespace chartdesc
