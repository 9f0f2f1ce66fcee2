#include "doctest.h"

#include "chartdesc/facts.hpp"
#include "chartdesc/trends.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace chartdesc;

namespace {

constexpr int kCases = 1000;

Column column_of(const std::vector<double>& v) {
    Column c;
    c.name = "v";
    c.ctype = ColumnType::quantitative;
    for (double x : v) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        c.raw.emplace_back(buf);
        c.missing.push_back(false);
        c.numeric.push_back(x);
    }
    return c;
}

std::vector<double> random_values(std::mt19937_64& rng, std::size_t n, bool with_ties) {
    std::uniform_real_distribution<double> u(-1000, 1000);
    std::uniform_int_distribution<int> small(0, 5);
    std::vector<double> v(n);
    for (auto& x : v) x = with_ties ? double(small(rng)) : u(rng);
    return v;
}

double oracle_quantile(std::vector<double> v, double p) {
    std::sort(v.begin(), v.end());
    const double pos = p * double(v.size() - 1);
    const double below = std::floor(pos);
    const double frac = pos - below;
    const auto i = std::size_t(below);
    if (i + 1 >= v.size()) return v.back();
    return v[i] * (1 - frac) + v[i + 1] * frac;
}

double oracle_pearson(const std::vector<double>& x, const std::vector<double>& y) {
    long double n = x.size(), sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += (long double)x[i] * x[i];
        syy += (long double)y[i] * y[i];
        sxy += (long double)x[i] * y[i];
    }
    return double((n * sxy - sx * sy) / std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy)));
}

}  // namespace

TEST_CASE("extrema match a brute-force scan") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> len(1, 30);
    std::bernoulli_distribution ties(0.5);
    for (int c = 0; c < kCases; ++c) {
        const auto v = random_values(rng, len(rng), ties(rng));
        std::vector<LabeledValue> series;
        for (std::size_t i = 0; i < v.size(); ++i) series.emplace_back("c" + std::to_string(i), v[i]);
        const auto e = std::get<Extremum>(find_extrema(series).payload);

        std::vector<std::string> want_max, want_min;
        for (std::size_t i = 0; i < v.size(); ++i) {
            bool is_max = true, is_min = true;
            for (std::size_t j = 0; j < v.size(); ++j) {
                if (v[j] > v[i]) is_max = false;
                if (v[j] < v[i]) is_min = false;
            }
            if (is_max) want_max.push_back(series[i].first);
            if (is_min) want_min.push_back(series[i].first);
        }
        REQUIRE(e.max_categories == want_max);
        REQUIRE(e.min_categories == want_min);
    }
}

TEST_CASE("outliers match the fence definition") {
    std::mt19937_64 rng(202);
    std::uniform_int_distribution<std::size_t> len(4, 40);
    std::bernoulli_distribution ties(0.3);
    std::cauchy_distribution<double> heavy(0, 10);
    for (int c = 0; c < kCases; ++c) {
        auto v = random_values(rng, len(rng), ties(rng));
        for (auto& x : v)
            if (ties(rng)) x = heavy(rng);
        const auto o = std::get<Outliers>(detect_outliers(column_of(v)).payload);

        const double q1 = oracle_quantile(v, 0.25), q3 = oracle_quantile(v, 0.75);
        const double lo = q1 - 1.5 * (q3 - q1), hi = q3 + 1.5 * (q3 - q1);
        std::vector<std::size_t> want;
        for (std::size_t i = 0; i < v.size(); ++i)
            if (v[i] < lo || v[i] > hi) want.push_back(i);
        REQUIRE(o.q1 == doctest::Approx(q1).epsilon(1e-12));
        REQUIRE(o.q3 == doctest::Approx(q3).epsilon(1e-12));
        REQUIRE(o.rows == want);
    }
}

TEST_CASE("correlation matches the raw-sum formula") {
    std::mt19937_64 rng(303);
    std::uniform_int_distribution<std::size_t> len(3, 50);
    std::normal_distribution<double> z(0, 1);
    std::uniform_real_distribution<double> mix(-1, 1);
    for (int c = 0; c < kCases; ++c) {
        const std::size_t n = len(rng);
        const double rho = mix(rng);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = z(rng) * 10 + 5;
            y[i] = rho * x[i] + z(rng) * 3;
        }
        const auto r = std::get<Correlation>(correlation(column_of(x), column_of(y)).payload);
        REQUIRE(std::abs(r.r - oracle_pearson(x, y)) < 1e-9);
        REQUIRE(r.n == n);
        REQUIRE(r.strength == strength_for(r.r));
    }
}

TEST_CASE("correlation is invariant under affine maps up to sign") {
    std::mt19937_64 rng(404);
    std::uniform_int_distribution<std::size_t> len(3, 40);
    std::normal_distribution<double> z(0, 1);
    std::uniform_real_distribution<double> scale(0.01, 100), shift(-1e3, 1e3);
    std::bernoulli_distribution flip(0.5);
    for (int c = 0; c < kCases; ++c) {
        const std::size_t n = len(rng);
        std::vector<double> x(n), y(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = z(rng);
            y[i] = 0.5 * x[i] + z(rng);
        }
        const double a = scale(rng) * (flip(rng) ? -1 : 1), b = shift(rng);
        const double s = scale(rng) * (flip(rng) ? -1 : 1), t = shift(rng);
        std::vector<double> x2(n), y2(n);
        for (std::size_t i = 0; i < n; ++i) {
            x2[i] = a * x[i] + b;
            y2[i] = s * y[i] + t;
        }
        const double r1 = std::get<Correlation>(correlation(column_of(x), column_of(y)).payload).r;
        const double r2 = std::get<Correlation>(correlation(column_of(x2), column_of(y2)).payload).r;
        const double sign = (a > 0) == (s > 0) ? 1.0 : -1.0;
        REQUIRE(std::abs(r2 - sign * r1) < 1e-9);
    }
}

TEST_CASE("trend direction is invariant under affine maps") {
    std::mt19937_64 rng(505);
    std::uniform_int_distribution<int> len(3, 40);
    std::normal_distribution<double> z(0, 1);
    std::uniform_real_distribution<double> slope(-3, 3), scale(0.01, 100), shift(-1e3, 1e3);
    std::bernoulli_distribution flip(0.5);
    int checked = 0;
    for (int c = 0; c < kCases; ++c) {
        const int n = len(rng);
        const double m = slope(rng);
        Series s;
        for (int i = 0; i < n; ++i) s.push_back({double(i), m * i + z(rng) * 2});
        const double ax = scale(rng), bx = shift(rng);
        const double ay = scale(rng) * (flip(rng) ? -1 : 1), by = shift(rng);
        Series t;
        for (const auto& p : s) t.push_back({ax * p.x + bx, ay * p.y + by});

        const auto a = std::get<TrendClassification>(classify_trend(s).payload);
        const auto b = std::get<TrendClassification>(classify_trend(t).payload);
        // skip series sitting on the flat threshold
        if (std::abs(std::abs(a.normalized_slope) - Thresholds{}.flat_slope) < 1e-9) continue;
        ++checked;
        TrendDirection want = a.direction;
        if (ay < 0 && want != TrendDirection::flat)
            want = want == TrendDirection::increasing ? TrendDirection::decreasing : TrendDirection::increasing;
        REQUIRE(b.direction == want);
        REQUIRE(b.fluctuating == a.fluctuating);
        REQUIRE(b.r2 == doctest::Approx(a.r2).epsilon(1e-9));
    }
    CHECK(checked > kCases * 9 / 10);
}
