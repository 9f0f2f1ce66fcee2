#include "chartdesc/trends.hpp"

#include "chartdesc/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

namespace chartdesc {

namespace {

void split(const Series& s, std::vector<double>& xs, std::vector<double>& ys) {
    xs.clear();
    ys.clear();
    for (const auto& p : s) {
        xs.push_back(p.x);
        ys.push_back(p.y);
    }
}

void require_finite(const Series& s, const char* op) {
    for (const auto& p : s)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw Error("invalid-value", std::string(op) + ": series contains a non-finite point");
}

struct Bounds {
    double xmin, xmax, ymin, ymax;
};

Bounds bounds_of(const std::vector<const Series*>& all) {
    Bounds b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const Series* s : all) {
        for (const auto& p : *s) {
            b.xmin = std::min(b.xmin, p.x);
            b.xmax = std::max(b.xmax, p.x);
            b.ymin = std::min(b.ymin, p.y);
            b.ymax = std::max(b.ymax, p.y);
        }
    }
    return b;
}

Series normalized(const Series& s, const Bounds& b) {
    const double xr = b.xmax - b.xmin, yr = b.ymax - b.ymin;
    Series out;
    out.reserve(s.size());
    for (const auto& p : s) out.push_back({xr > 0 ? (p.x - b.xmin) / xr : 0.0, yr > 0 ? (p.y - b.ymin) / yr : 0.0});
    return out;
}

Point centroid(const Series& s) {
    Point c;
    for (const auto& p : s) {
        c.x += p.x;
        c.y += p.y;
    }
    c.x /= static_cast<double>(s.size());
    c.y /= static_cast<double>(s.size());
    return c;
}

double rms_spread(const Series& s) {
    const Point c = centroid(s);
    double acc = 0;
    for (const auto& p : s) acc += (p.x - c.x) * (p.x - c.x) + (p.y - c.y) * (p.y - c.y);
    return std::sqrt(acc / static_cast<double>(s.size()));
}

}  // namespace

std::string_view to_string(TrendKind k) {
    switch (k) {
        case TrendKind::direction: return "direction";
        case TrendKind::fluctuation: return "fluctuation";
        case TrendKind::exception_window: return "exception_window";
        case TrendKind::dispersion_compare: return "dispersion_compare";
        case TrendKind::separation: return "separation";
        case TrendKind::growth_shape: return "growth_shape";
    }
    return "unknown";
}

std::string_view to_string(TrendDirection d) {
    switch (d) {
        case TrendDirection::increasing: return "increasing";
        case TrendDirection::decreasing: return "decreasing";
        case TrendDirection::flat: return "flat";
    }
    return "flat";
}

LinearFit fit_line(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n < 2 || ys.size() != n) throw Error("too-few-values", "a line fit needs at least 2 points");
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (sxx == 0.0) throw Error("invalid-value", "a line fit needs distinct x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.r2 = syy == 0.0 ? 1.0 : std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    return f;
}

TrendFact classify_trend(const Series& series, const Thresholds& t) {
    if (series.size() < 3) throw Error("too-few-values", "classify_trend needs at least 3 points");
    require_finite(series, "classify_trend");
    for (std::size_t i = 1; i < series.size(); ++i)
        if (!(series[i].x > series[i - 1].x)) throw Error("unordered-x", "classify_trend needs strictly increasing x");

    std::vector<double> xs, ys;
    split(series, xs, ys);
    const LinearFit fit = fit_line(xs, ys);
    const auto [ylo, yhi] = std::minmax_element(ys.begin(), ys.end());
    const double xrange = xs.back() - xs.front();
    const double yrange = *yhi - *ylo;

    TrendClassification c;
    c.slope = fit.slope;
    c.r2 = fit.r2;
    c.normalized_slope = yrange > 0 ? fit.slope * xrange / yrange : 0.0;

    const double tol = 1e-9 * yrange;
    int last_sign = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double r = ys[i] - fit.at(xs[i]);
        const int sign = r > tol ? 1 : (r < -tol ? -1 : 0);
        if (sign == 0) continue;
        if (last_sign != 0 && sign != last_sign) ++c.sign_changes;
        last_sign = sign;
    }
    c.fluctuating = c.r2 < t.fluctuation_r2 || c.sign_changes >= t.fluctuation_sign_changes;
    if (std::fabs(c.normalized_slope) < t.flat_slope) c.direction = TrendDirection::flat;
    else c.direction = c.normalized_slope > 0 ? TrendDirection::increasing : TrendDirection::decreasing;

    const TrendKind kind =
        c.direction == TrendDirection::flat && c.fluctuating ? TrendKind::fluctuation : TrendKind::direction;
    return TrendFact{kind, 3, true, c, {}, {}};
}

std::vector<TrendFact> detect_exceptions(const std::map<std::string, Series>& multi, double window,
                                         const Thresholds& t) {
    if (multi.empty()) throw Error("too-few-values", "detect_exceptions needs at least one series");
    if (!(window > 0)) throw Error("invalid-value", "exception window must be positive");

    // Align on the x positions every series has.
    std::set<double> shared;
    bool first = true;
    for (const auto& [id, s] : multi) {
        require_finite(s, "detect_exceptions");
        std::set<double> xs;
        for (const auto& p : s) xs.insert(p.x);
        if (first) {
            shared = std::move(xs);
            first = false;
        } else {
            std::set<double> keep;
            std::set_intersection(shared.begin(), shared.end(), xs.begin(), xs.end(), std::inserter(keep, keep.end()));
            shared = std::move(keep);
        }
    }
    if (shared.size() < 3) throw Error("no-shared-domain", "series share fewer than 3 x positions");
    const std::vector<double> grid(shared.begin(), shared.end());
    if (window > grid.back() - grid.front())
        throw Error("window-too-large", "exception window is wider than the shared x domain");

    const std::size_t m = grid.size();
    std::vector<std::vector<std::string>> flagged_by(m);
    for (const auto& [id, s] : multi) {
        std::map<double, double> by_x;
        for (const auto& p : s) by_x.emplace(p.x, p.y);  // first occurrence wins on duplicate x
        std::vector<double> ys(m);
        for (std::size_t i = 0; i < m; ++i) ys[i] = by_x.at(grid[i]);
        const auto [lo, hi] = std::minmax_element(ys.begin(), ys.end());
        const double tol = 1e-9 * (*hi - *lo);

        for (std::size_t j = 0; j < m; ++j) {
            std::vector<double> cx, cy;
            for (std::size_t i = 0; i < m; ++i) {
                const double d = std::fabs(grid[i] - grid[j]);
                if (d > window && d <= 3.0 * window) {
                    cx.push_back(grid[i]);
                    cy.push_back(ys[i]);
                }
            }
            if (cx.size() < 3) continue;
            const LinearFit fit = fit_line(cx, cy);
            double ss = 0;
            for (std::size_t i = 0; i < cx.size(); ++i) ss += std::pow(cy[i] - fit.at(cx[i]), 2);
            const double sigma = std::sqrt(ss / static_cast<double>(cx.size()));
            const double resid = ys[j] - fit.at(grid[j]);
            if (resid < -t.exception_sigma * sigma && resid < -tol) flagged_by[j].push_back(id);
        }
    }

    const double needed = std::ceil(t.exception_quorum * static_cast<double>(multi.size()) - 1e-9);
    std::vector<TrendFact> out;
    std::optional<ExceptionWindow> current;
    const auto flush = [&] {
        if (!current) return;
        Provenance prov;
        prov.groups = current->series;
        out.push_back(TrendFact{TrendKind::exception_window, 3, true, *current, prov, {}});
        current.reset();
    };
    for (std::size_t j = 0; j < m; ++j) {
        if (static_cast<double>(flagged_by[j].size()) < needed) continue;
        if (current && grid[j] - current->end > window) flush();
        if (!current) current = ExceptionWindow{grid[j], grid[j], {}, multi.size()};
        current->end = grid[j];
        for (const auto& id : flagged_by[j])
            if (std::find(current->series.begin(), current->series.end(), id) == current->series.end())
                current->series.push_back(id);
    }
    flush();
    for (auto& f : out) {
        auto& w = std::get<ExceptionWindow>(f.payload);
        std::sort(w.series.begin(), w.series.end());
        f.provenance.groups = w.series;
    }
    return out;
}

TrendFact dispersion_compare(const std::map<std::string, Series>& groups) {
    if (groups.empty()) throw Error("too-few-values", "dispersion_compare needs at least one group");
    std::vector<const Series*> all;
    for (const auto& [id, s] : groups) {
        if (s.size() < 2) throw Error("too-few-values", "group '" + id + "' needs at least 2 points");
        require_finite(s, "dispersion_compare");
        all.push_back(&s);
    }
    const Bounds b = bounds_of(all);
    DispersionComparison d;
    Provenance prov;
    for (const auto& [id, s] : groups) {
        d.scores.emplace_back(id, rms_spread(normalized(s, b)));
        prov.groups.push_back(id);
    }
    std::stable_sort(d.scores.begin(), d.scores.end(),
                     [](const auto& l, const auto& r) { return l.second > r.second; });
    return TrendFact{TrendKind::dispersion_compare, 3, true, d, prov, {}};
}

TrendFact separation(const std::string& a_label, const Series& a, const std::string& b_label, const Series& b,
                     const Thresholds& t) {
    if (a.size() < 2 || b.size() < 2) throw Error("too-few-values", "separation needs at least 2 points per group");
    require_finite(a, "separation");
    require_finite(b, "separation");
    const Bounds bounds = bounds_of({&a, &b});
    const Series na = normalized(a, bounds), nb = normalized(b, bounds);
    const Point ca = centroid(na), cb = centroid(nb);

    SeparationResult s;
    s.a = a_label;
    s.b = b_label;
    s.centroid_distance = std::hypot(ca.x - cb.x, ca.y - cb.y);
    s.spread_sum = rms_spread(na) + rms_spread(nb);
    if (s.spread_sum == 0.0) {
        if (s.centroid_distance == 0.0)
            throw Error("undefined-separation", "both groups collapse onto the same point");
        s.score = std::numeric_limits<double>::infinity();
    } else {
        s.score = s.centroid_distance / s.spread_sum;
    }
    s.gap = s.score > t.gap_ratio;
    return TrendFact{TrendKind::separation, 3, true, s, Provenance{{}, {a_label, b_label}}, {}};
}

TrendFact growth_shape(const Series& series, const Thresholds& t) {
    if (series.size() < 4) throw Error("too-few-values", "growth_shape needs at least 4 points");
    require_finite(series, "growth_shape");
    std::vector<double> xs, ys, logs;
    split(series, xs, ys);
    for (double y : ys) {
        if (!(y > 0)) throw Error("non-positive", "growth_shape needs strictly positive values");
        logs.push_back(std::log(y));
    }
    GrowthShape g;
    g.r2_linear = fit_line(xs, ys).r2;
    g.r2_log = fit_line(xs, logs).r2;
    g.exponential = g.r2_log - g.r2_linear > t.growth_margin;
    return TrendFact{TrendKind::growth_shape, 3, true, g, {}, {}};
}

}  // namespace chartdesc
