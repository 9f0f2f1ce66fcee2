#include "doctest.h"

#include "chartdesc/error.hpp"
#include "chartdesc/tabular.hpp"
#include "support.hpp"

#include <cmath>
#include <map>

using namespace chartdesc;

namespace {

std::string kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

}  // namespace

TEST_CASE("csv with numeric columns loads with inferred types") {
    const auto d = parse_table("age,rate\n10,0.2\n20,0.2\n30,0.2\n40,0.4\n50,1.3\n60,3.6\n70,8.0\n80,14.8\n",
                               TableFormat::csv);
    CHECK(d.column_count() == 2);
    CHECK(d.row_count() == 8);
    CHECK(d.column("rate").ctype == ColumnType::quantitative);
    CHECK(d.column("rate").numeric[7] == doctest::Approx(14.8));
}

TEST_CASE("ragged rows are rejected with the offending line") {
    try {
        parse_table("a,b\n1,2\n3\n", TableFormat::csv);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == "ragged-rows");
        REQUIRE(e.line().has_value());
        CHECK(*e.line() == 3);
    }
}

TEST_CASE("duplicate headers are rejected") {
    CHECK(kind_of([] { parse_table("a,a\n1,2\n", TableFormat::csv); }) == "duplicate-header");
}

TEST_CASE("quoted fields follow RFC 4180") {
    const auto rows = parse_csv("name,note\n\"Smith, J\",\"said \"\"hi\"\"\"\n\"multi\nline\",x\n");
    REQUIRE(rows.size() == 3);
    CHECK(rows[1][0] == "Smith, J");
    CHECK(rows[1][1] == "said \"hi\"");
    CHECK(rows[2][0] == "multi\nline");
    CHECK(kind_of([] { parse_csv("a\n\"open\n"); }) == "syntax");
}

TEST_CASE("date columns are inferred as temporal") {
    const auto d = parse_table("date,v\n2000-01-03,1\n2000-02-01,2\n2001-06-15,3\n2002-12-31,4\n", TableFormat::csv);
    const auto& c = d.column("date");
    CHECK(c.ctype == ColumnType::temporal);
    // brute-force oracle: every cell parses as a date
    std::size_t parsed = 0;
    for (const auto& raw : c.raw) parsed += parse_date(raw).has_value();
    CHECK(parsed == c.size());
    CHECK(c.numeric[0] == doctest::Approx(2000.0 + 2.0 / 366.0));
    CHECK(format_iso_date(c.numeric[2]) == "2001-06-15");
}

TEST_CASE("type inference needs 90 percent of non-missing cells") {
    std::vector<std::string> nine_of_ten{"1", "2", "3", "4", "5", "6", "7", "8", "9", "n/a"};
    CHECK(make_column("v", nine_of_ten).ctype == ColumnType::quantitative);
    CHECK(make_column("v", nine_of_ten).is_missing(9));
    std::vector<std::string> eight_of_ten{"1", "2", "3", "4", "5", "6", "7", "8", "x", "y"};
    CHECK(make_column("v", eight_of_ten).ctype == ColumnType::nominal);
}

TEST_CASE("missing markers are preserved") {
    const auto d = parse_table("v\n1\nNA\n\nnull\nNULL\n5\n", TableFormat::csv);
    const auto& c = d.column("v");
    CHECK(c.ctype == ColumnType::quantitative);
    CHECK(c.numeric_values() == std::vector<double>{1, 5});
    CHECK(c.is_missing(1));
    CHECK(c.is_missing(3));
}

TEST_CASE("json rows load in key order") {
    const auto d = dataset_from_json_rows(R"([{"a": 1, "b": "x"}, {"a": null, "b": "y"}])");
    REQUIRE(d.column_count() == 2);
    CHECK(d.columns()[0].name == "a");
    CHECK(d.column("a").is_missing(1));
    CHECK(d.column("b").ctype == ColumnType::nominal);
}

TEST_CASE("unreadable source") {
    CHECK(kind_of([] { load_table("/nonexistent/file.csv"); }) == "data-not-found");
}

TEST_CASE("group means on the long life expectancy fixture") {
    const auto d = load_table(testsupport::fixture("life_expectancy_long.csv"));
    const auto rows = group_aggregate(d, {"income", "gender"}, "life_expectancy", AggregateOp::mean);
    REQUIRE(rows.size() == 4);
    std::map<std::pair<std::string, std::string>, double> got;
    for (const auto& r : rows) got[{r.key[0], r.key[1]}] = *r.value;
    CHECK(got[{"Low Income Countries", "Men"}] == doctest::Approx(60));
    CHECK(got[{"Low Income Countries", "Women"}] == doctest::Approx(65));
    CHECK(got[{"High Income Countries", "Men"}] == doctest::Approx(77));
    CHECK(got[{"High Income Countries", "Women"}] == doctest::Approx(82));
    // lexicographic key order
    CHECK(rows[0].key == std::vector<std::string>{"High Income Countries", "Men"});
    CHECK(rows[3].key == std::vector<std::string>{"Low Income Countries", "Women"});

    // hand-computed oracle from the raw cells
    const auto& inc = d.column("income");
    const auto& gen = d.column("gender");
    const auto& val = d.column("life_expectancy");
    double sum = 0;
    int n = 0;
    for (std::size_t r = 0; r < d.row_count(); ++r)
        if (inc.raw[r] == "Low Income Countries" && gen.raw[r] == "Men") sum += val.numeric[r], ++n;
    CHECK(got[{"Low Income Countries", "Men"}] == doctest::Approx(sum / n));
}

TEST_CASE("empty grouping gives the global aggregate") {
    const auto d = parse_table("g,v\na,1\nb,2\na,6\n", TableFormat::csv);
    const auto rows = group_aggregate(d, {}, "v", AggregateOp::mean);
    REQUIRE(rows.size() == 1);
    CHECK(*rows[0].value == doctest::Approx(3));
}

TEST_CASE("count excludes missing values and empty groups stay missing") {
    const auto d = parse_table("g,v\na,1\na,NA\nb,NA\na,3\n", TableFormat::csv);
    const auto counts = group_aggregate(d, {"g"}, "v", AggregateOp::count);
    CHECK(*counts[0].value == 2);
    CHECK(*counts[1].value == 0);
    const auto means = group_aggregate(d, {"g"}, "v", AggregateOp::mean);
    CHECK(*means[0].value == doctest::Approx(2));
    CHECK_FALSE(means[1].value.has_value());
}

TEST_CASE("other aggregate operations") {
    const auto d = parse_table("g,v\na,4\na,1\na,7\na,2\n", TableFormat::csv);
    CHECK(*group_aggregate(d, {"g"}, "v", AggregateOp::median)[0].value == doctest::Approx(3));
    CHECK(*group_aggregate(d, {"g"}, "v", AggregateOp::min)[0].value == 1);
    CHECK(*group_aggregate(d, {"g"}, "v", AggregateOp::max)[0].value == 7);
    CHECK(*group_aggregate(d, {"g"}, "v", AggregateOp::sum)[0].value == 14);
    CHECK(kind_of([&] { group_aggregate(d, {"g"}, "nope", AggregateOp::sum); }) == "missing-column");
}
