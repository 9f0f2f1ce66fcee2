#include "doctest.h"

#include "chartdesc/chart_spec.hpp"
#include "chartdesc/error.hpp"
#include "support.hpp"

using namespace chartdesc;

namespace {

std::string error_kind(std::string_view text) {
    try {
        parse_spec(text);
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

const char* kMinimal = R"({"mark": "bar", "data": {"values": [{"a": "x", "b": 1}, {"a": "y", "b": 2}]},
  "encoding": {"x": {"field": "a", "type": "nominal"}, "y": {"field": "b", "type": "quantitative"}}})";

}  // namespace

TEST_CASE("minimal spec parses") {
    const auto s = parse_spec(kMinimal);
    CHECK(s.mark == Mark::bar);
    CHECK(s.x().field == "a");
    CHECK(s.y().type == ColumnType::quantitative);
    CHECK(s.color() == nullptr);
    CHECK(s.data.inline_json.has_value());
}

TEST_CASE("covid fixture") {
    const auto s = load_spec(testsupport::fixture("covid.json"));
    CHECK(s.title == "COVID-19 mortality rate by age");
    REQUIRE(s.x().bin.has_value());
    CHECK(s.x().bin->labels.size() == 8);
    CHECK(s.y().unit == "%");
    REQUIRE(s.y().numeric_domain.has_value());
    CHECK(s.y().numeric_domain->second == 15);
    CHECK(chart_type_phrase(s) == "vertical bar chart");
}

TEST_CASE("chart type phrases") {
    CHECK(chart_type_phrase(load_spec(testsupport::fixture("stocks.json"))) == "multi-line chart");
    CHECK(chart_type_phrase(load_spec(testsupport::fixture("life_expectancy.json"))) == "scatter plot");
}

TEST_CASE("spec errors") {
    CHECK(error_kind("{\"mark\": ") == "syntax");
    CHECK(error_kind(R"({"mark": "pie", "encoding": {}})") == "unknown-mark");
    CHECK(error_kind(R"({"mark": "bar", "encoding": {"x": {"field": "a", "type": "nominal"}}})") == "missing-channel");
    CHECK(error_kind(R"({"mark": "bar", "encoding": {"x": {"field": "a", "type": "nominal"},
        "y": {"field": "b", "type": "quantitative", "scale": {"domain": [5, 1]}}}})") == "malformed-domain");
    CHECK(error_kind(R"({"mark": "bar", "encoding": {"x": {"field": "a", "type": "nominal"},
        "y": {"field": "b", "type": "quantitative", "scale": {"domain": ["a"]}}}})") == "malformed-domain");
    CHECK(error_kind("[1, 2]") == "invalid-spec");
}

TEST_CASE("syntax errors carry a position") {
    try {
        parse_spec("{\n  \"mark\": bar\n}");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == "syntax");
        CHECK(e.line().has_value());
    }
}

TEST_CASE("serialize round trips the fixtures") {
    for (const char* name : {"covid.json", "stocks.json", "life_expectancy.json"}) {
        CAPTURE(name);
        const auto s = load_spec(testsupport::fixture(name));
        const auto text = serialize_spec(s);
        CHECK(parse_spec(text) == s);
        CHECK(serialize_spec(parse_spec(text)) == text);
    }
}

TEST_CASE("validation against the data") {
    auto s = parse_spec(kMinimal);
    const auto d = load_spec_data(s, ".");
    CHECK_NOTHROW(validate_spec(s, d));

    auto missing = s;
    missing.encodings[Channel::y].field = "nope";
    CHECK_THROWS_WITH_AS(validate_spec(missing, d), doctest::Contains("nope"), Error);

    auto mismatch = s;
    mismatch.encodings[Channel::x].type = ColumnType::quantitative;
    try {
        validate_spec(mismatch, d);
        FAIL("expected type-mismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == "type-mismatch");
    }
}

TEST_CASE("bin labels must cover the data") {
    auto s = load_spec(testsupport::fixture("covid.json"));
    s.encodings[Channel::x].bin->labels.pop_back();
    const auto d = load_spec_data(s, testsupport::fixture(""));
    try {
        validate_spec(s, d);
        FAIL("expected unknown-bin-label");
    } catch (const Error& e) {
        CHECK(e.kind() == "unknown-bin-label");
    }
}

TEST_CASE("missing data file") {
    auto s = parse_spec(kMinimal);
    s.data = DataRef{std::nullopt, std::string("absent.csv")};
    try {
        load_spec_data(s, testsupport::fixture(""));
        FAIL("expected data-not-found");
    } catch (const Error& e) {
        CHECK(e.kind() == "data-not-found");
    }
}

TEST_CASE("axis extents") {
    const auto covid = testsupport::load_chart("covid.json");
    const auto y = axis_extent(covid, Channel::y);
    CHECK(y.min == 0);
    CHECK(y.max == 15);
    const auto x = axis_extent(covid, Channel::x);
    CHECK(x.categorical);
    CHECK(x.binned);
    CHECK(x.categories.front() == "10-19");

    const auto stocks = testsupport::load_chart("stocks.json");
    const auto t = axis_extent(stocks, Channel::x);
    CHECK(t.temporal);
    CHECK(t.min == doctest::Approx(2000));
    CHECK(t.max == doctest::Approx(2010.75).epsilon(0.01));
}

TEST_CASE("computed bins") {
    BinSpec b;
    b.step = 10;
    CHECK(computed_bin_label(b, 14, std::nullopt) == "10-20");
    CHECK(computed_bin_label(b, 20, std::nullopt) == "20-30");
    b.origin = 5;
    CHECK(computed_bin_label(b, 14, std::nullopt) == "5-15");
}
