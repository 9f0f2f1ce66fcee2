#include "doctest.h"

#include "chartdesc/error.hpp"
#include "chartdesc/facts.hpp"

#include <cmath>

using namespace chartdesc;

namespace {

Column numbers(std::vector<std::string> cells) { return make_column("v", std::move(cells)); }

std::string kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

}  // namespace

TEST_CASE("summary statistics use the population deviation") {
    const auto f = summary_stats(numbers({"2", "4", "4", "4", "5", "5", "7", "9"}));
    const auto s = std::get<SummaryStats>(f.payload);
    CHECK(f.kind == FactKind::summary_stats);
    CHECK(s.mean == doctest::Approx(5));
    CHECK(s.median == doctest::Approx(4.5));
    CHECK(s.stdev == doctest::Approx(2));
    CHECK(s.min == 2);
    CHECK(s.max == 9);
    CHECK(s.n == 8);
}

TEST_CASE("summary statistics skip missing cells") {
    const auto s = std::get<SummaryStats>(summary_stats(numbers({"1", "NA", "3", "", "5", "7", "9", "11", "13", "15"})).payload);
    CHECK(s.n == 8);
    CHECK(s.mean == doctest::Approx(8));
}

TEST_CASE("extrema keep ties in input order") {
    const auto f = find_extrema({{"10-19", 0.2}, {"20-29", 0.2}, {"30-39", 0.2}, {"40-49", 0.4}, {"80+", 14.8}});
    const auto e = std::get<Extremum>(f.payload);
    CHECK(e.max_categories == std::vector<std::string>{"80+"});
    CHECK(e.max_value == doctest::Approx(14.8));
    CHECK(e.min_categories == std::vector<std::string>{"10-19", "20-29", "30-39"});
    CHECK(e.min_value == doctest::Approx(0.2));
}

TEST_CASE("extrema of a constant series") {
    const auto e = std::get<Extremum>(find_extrema({{"a", 1}, {"b", 1}}).payload);
    CHECK(e.max_categories.size() == 2);
    CHECK(e.min_categories.size() == 2);
    CHECK(kind_of([] { find_extrema({}); }) == "empty-series");
    CHECK(kind_of([] { find_extrema({{"a", NAN}}); }) == "invalid-value");
}

TEST_CASE("quartiles interpolate linearly") {
    const std::vector<double> v{1, 2, 3, 4};
    CHECK(quantile_sorted(v, 0.25) == doctest::Approx(1.75));
    CHECK(quantile_sorted(v, 0.5) == doctest::Approx(2.5));
    CHECK(quantile_sorted(v, 0.75) == doctest::Approx(3.25));
    CHECK(quantile_sorted(v, 0) == 1);
    CHECK(quantile_sorted(v, 1) == 4);
}

TEST_CASE("tukey fences flag the covid tail") {
    const auto f = detect_outliers(numbers({"0.2", "0.2", "0.2", "0.4", "1.3", "3.6", "8.0", "14.8"}));
    const auto o = std::get<Outliers>(f.payload);
    // q1 = 0.2, q3 = 4.7, iqr = 4.5, upper fence = 11.45
    CHECK(o.q1 == doctest::Approx(0.2));
    CHECK(o.q3 == doctest::Approx(4.7));
    CHECK(o.upper_fence == doctest::Approx(11.45));
    CHECK(o.values == std::vector<double>{14.8});
    CHECK(o.rows == std::vector<std::size_t>{7});
}

TEST_CASE("outliers need four values") {
    CHECK(kind_of([] { detect_outliers(numbers({"1", "2", "3"})); }) == "too-few-values");
    CHECK(kind_of([] { detect_outliers(make_column("c", {"a", "b", "c", "d"})); }) == "type-mismatch");
}

TEST_CASE("pearson correlation") {
    const auto x = numbers({"1", "2", "3", "4", "5"});
    const auto f = correlation(x, numbers({"2", "4", "6", "8", "10"}));
    const auto c = std::get<Correlation>(f.payload);
    CHECK(c.r == doctest::Approx(1));
    CHECK(c.strength == Strength::strong);
    CHECK(c.direction == Direction::positive);

    const auto n = std::get<Correlation>(correlation(x, numbers({"5", "3", "4", "1", "2"})).payload);
    CHECK(n.r == doctest::Approx(-0.8));
    CHECK(n.direction == Direction::negative);
    CHECK(n.strength == Strength::strong);
}

TEST_CASE("correlation uses pairwise-complete rows") {
    const auto c = std::get<Correlation>(
        correlation(numbers({"1", "2", "NA", "3", "4"}), numbers({"1", "2", "100", "3", "NA"})).payload);
    CHECK(c.n == 3);
    CHECK(c.r == doctest::Approx(1));
    CHECK(kind_of([] { correlation(numbers({"1", "2", "3"}), numbers({"4", "4", "4"})); }) == "undefined-correlation");
    CHECK(kind_of([] { correlation(numbers({"1", "2"}), numbers({"4", "5"})); }) == "too-few-values");
}

TEST_CASE("strength bands") {
    CHECK(strength_for(0.7) == Strength::strong);
    CHECK(strength_for(-0.69) == Strength::moderate);
    CHECK(strength_for(0.4) == Strength::moderate);
    CHECK(strength_for(0.39) == Strength::weak);
}

TEST_CASE("comparisons") {
    const auto c = std::get<Comparison>(compare_points({"a", 6}, {"b", 4}).payload);
    CHECK(c.relation == Relation::greater);
    CHECK(c.difference == 2);
    CHECK(c.relative_difference == doctest::Approx(0.5));
    CHECK(std::get<Comparison>(compare_points({"a", 1}, {"b", 3}).payload).relation == Relation::less);
    const auto z = std::get<Comparison>(compare_points({"a", 1}, {"b", 0}).payload);
    CHECK(z.relative_difference == 0);
    CHECK(std::get<Comparison>(compare_points({"a", 2}, {"b", 2}).payload).relation == Relation::equal);
}

TEST_CASE("shared value groups") {
    const auto s = std::get<SharedValue>(
        shared_value_groups({{"a", 0.2}, {"b", 0.4}, {"c", 0.2}, {"d", 0.4}, {"e", 1}}).payload);
    REQUIRE(s.groups.size() == 2);
    CHECK(s.groups[0] == std::vector<std::string>{"a", "c"});
    CHECK(s.groups[1] == std::vector<std::string>{"b", "d"});
    CHECK(s.values[0] == doctest::Approx(0.2));
    CHECK(std::get<SharedValue>(shared_value_groups({{"a", 1}, {"b", 2}}).payload).groups.empty());
    CHECK(std::get<SharedValue>(shared_value_groups({{"a", 100}, {"b", 101}}, 0.02).payload).groups.size() == 1);
}

TEST_CASE("group means keep key order") {
    const auto f = group_means("Low Income Countries", {{"Men", 60}, {"Women", 65}});
    const auto g = std::get<GroupMeans>(f.payload);
    CHECK(g.group == "Low Income Countries");
    CHECK(g.means[1].first == "Women");
    CHECK(f.level == 2);
}
