#include "chartdesc/facts.hpp"

#include "chartdesc/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace chartdesc {

namespace {

constexpr double kEqualityTolerance = 1e-9;

bool nearly_equal(double a, double b, double rel_tol) {
    if (a == b) return true;
    return std::fabs(a - b) <= rel_tol * std::max(std::fabs(a), std::fabs(b));
}

void require_quantitative(const Column& col, const char* op) {
    if (col.ctype != ColumnType::quantitative)
        throw Error("type-mismatch", std::string(op) + " needs a quantitative column; '" + col.name + "' is " +
                                         std::string(to_string(col.ctype)));
}

void require_finite(const std::vector<LabeledValue>& series, const char* op) {
    for (const auto& [label, v] : series)
        if (!std::isfinite(v)) throw Error("invalid-value", std::string(op) + ": value for '" + label + "' is not finite");
}

double mean_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    return std::clamp(m, v.front(), v.back());
}

}  // namespace

std::string_view to_string(FactKind k) {
    switch (k) {
        case FactKind::summary_stats: return "summary_stats";
        case FactKind::extremum: return "extremum";
        case FactKind::outliers: return "outliers";
        case FactKind::correlation: return "correlation";
        case FactKind::comparison: return "comparison";
        case FactKind::shared_value: return "shared_value";
        case FactKind::group_means: return "group_means";
    }
    return "unknown";
}

std::string_view to_string(Strength s) {
    switch (s) {
        case Strength::weak: return "weak";
        case Strength::moderate: return "moderate";
        case Strength::strong: return "strong";
    }
    return "weak";
}

std::string_view to_string(Direction d) { return d == Direction::positive ? "positive" : "negative"; }

std::string_view to_string(Relation r) {
    switch (r) {
        case Relation::greater: return "greater";
        case Relation::less: return "less";
        case Relation::equal: return "equal";
    }
    return "equal";
}

double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) throw Error("empty-column", "quantile of an empty sample");
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Strength strength_for(double r, const Thresholds& t) {
    const double a = std::fabs(r);
    if (a >= t.strong_correlation) return Strength::strong;
    if (a >= t.moderate_correlation) return Strength::moderate;
    return Strength::weak;
}

Fact summary_stats(const Column& col) {
    require_quantitative(col, "summary_stats");
    auto values = col.numeric_values();
    if (values.empty()) throw Error("empty-column", "summary_stats: column '" + col.name + "' has no values");
    std::sort(values.begin(), values.end());

    SummaryStats s;
    s.n = values.size();
    s.min = values.front();
    s.max = values.back();
    s.mean = mean_of(values);
    s.median = median_of(values);
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stdev = std::sqrt(ss / static_cast<double>(s.n));

    return Fact{FactKind::summary_stats, 2, s, Provenance{{col.name}, {}}, {}};
}

Fact find_extrema(const std::vector<LabeledValue>& series) {
    if (series.empty()) throw Error("empty-series", "find_extrema needs at least one value");
    require_finite(series, "find_extrema");
    Extremum e;
    e.max_value = series.front().second;
    e.min_value = series.front().second;
    for (const auto& [label, v] : series) {
        e.max_value = std::max(e.max_value, v);
        e.min_value = std::min(e.min_value, v);
    }
    Provenance prov;
    for (const auto& [label, v] : series) {
        if (v == e.max_value) e.max_categories.push_back(label);
        if (v == e.min_value) e.min_categories.push_back(label);
        prov.groups.push_back(label);
    }
    return Fact{FactKind::extremum, 2, e, prov, {}};
}

Fact detect_outliers(const Column& col) {
    require_quantitative(col, "detect_outliers");
    std::vector<double> sorted = col.numeric_values();
    if (sorted.size() < 4)
        throw Error("too-few-values", "detect_outliers needs at least 4 values; '" + col.name + "' has " +
                                          std::to_string(sorted.size()));
    std::sort(sorted.begin(), sorted.end());
    Outliers o;
    o.q1 = quantile_sorted(sorted, 0.25);
    o.q3 = quantile_sorted(sorted, 0.75);
    const double iqr = o.q3 - o.q1;
    o.lower_fence = o.q1 - 1.5 * iqr;
    o.upper_fence = o.q3 + 1.5 * iqr;
    for (std::size_t r = 0; r < col.size(); ++r) {
        if (col.is_missing(r)) continue;
        const double v = col.numeric[r];
        if (v < o.lower_fence || v > o.upper_fence) {
            o.values.push_back(v);
            o.rows.push_back(r);
        }
    }
    return Fact{FactKind::outliers, 2, o, Provenance{{col.name}, {}}, {}};
}

Fact correlation(const Column& x, const Column& y, const Thresholds& t) {
    require_quantitative(x, "correlation");
    require_quantitative(y, "correlation");
    if (x.size() != y.size()) throw Error("invalid-value", "correlation needs columns of equal length");
    std::vector<double> xs, ys;
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (x.is_missing(r) || y.is_missing(r)) continue;
        xs.push_back(x.numeric[r]);
        ys.push_back(y.numeric[r]);
    }
    if (xs.size() < 3)
        throw Error("too-few-values", "correlation needs at least 3 complete rows, found " + std::to_string(xs.size()));

    std::vector<std::size_t> idx(xs.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(xs[a], ys[a]) < std::tie(xs[b], ys[b]);
    });
    const double n = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (auto i : idx) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, syy = 0, sxy = 0;
    for (auto i : idx) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw Error("undefined-correlation", "correlation is undefined for a constant column");

    Correlation c;
    c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
    c.strength = strength_for(c.r, t);
    c.direction = c.r >= 0 ? Direction::positive : Direction::negative;
    c.n = xs.size();
    return Fact{FactKind::correlation, 2, c, Provenance{{x.name, y.name}, {}}, {}};
}

Fact compare_points(const LabeledValue& a, const LabeledValue& b) {
    require_finite({a, b}, "compare_points");
    Comparison c;
    c.a_label = a.first;
    c.a = a.second;
    c.b_label = b.first;
    c.b = b.second;
    c.difference = a.second - b.second;
    c.relative_difference = b.second == 0.0 ? 0.0 : c.difference / std::fabs(b.second);
    if (nearly_equal(a.second, b.second, kEqualityTolerance)) c.relation = Relation::equal;
    else c.relation = a.second > b.second ? Relation::greater : Relation::less;
    return Fact{FactKind::comparison, 2, c, Provenance{{}, {a.first, b.first}}, {}};
}

Fact shared_value_groups(const std::vector<LabeledValue>& series, double tolerance) {
    if (series.size() < 2) throw Error("too-few-values", "shared_value_groups needs at least 2 values");
    require_finite(series, "shared_value_groups");

    std::vector<std::size_t> order(series.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return series[a].second < series[b].second; });

    std::vector<std::vector<std::size_t>> clusters;
    for (std::size_t i = 0; i < order.size();) {
        std::size_t j = i + 1;
        while (j < order.size() && nearly_equal(series[order[i]].second, series[order[j]].second, tolerance)) ++j;
        if (j - i >= 2) {
            std::vector<std::size_t> members(order.begin() + static_cast<long>(i), order.begin() + static_cast<long>(j));
            std::sort(members.begin(), members.end());
            clusters.push_back(std::move(members));
        }
        i = j;
    }
    std::sort(clusters.begin(), clusters.end());

    SharedValue sv;
    Provenance prov;
    for (const auto& members : clusters) {
        std::vector<std::string> labels;
        for (auto m : members) {
            labels.push_back(series[m].first);
            prov.groups.push_back(series[m].first);
        }
        sv.groups.push_back(std::move(labels));
        sv.values.push_back(series[members.front()].second);
    }
    return Fact{FactKind::shared_value, 2, sv, prov, {}};
}

Fact group_means(std::string group, std::vector<std::pair<std::string, double>> means) {
    for (const auto& [k, v] : means)
        if (!std::isfinite(v)) throw Error("invalid-value", "group mean for '" + k + "' is not finite");
    Provenance prov{{}, {group}};
    for (const auto& [k, v] : means) prov.groups.push_back(k);
    GroupMeans g{std::move(group), std::move(means)};
    return Fact{FactKind::group_means, 2, g, prov, {}};
}

}  // namespace chartdesc
