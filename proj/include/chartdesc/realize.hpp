#pragma once

#include "chartdesc/chart_spec.hpp"
#include "chartdesc/config.hpp"
#include "chartdesc/facts.hpp"
#include "chartdesc/templates.hpp"
#include "chartdesc/trends.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace chartdesc {

enum class Style { templatized, natural };
std::string_view to_string(Style s);
std::optional<Style> style_from_string(std::string_view s);

struct Sentence {
    std::string text;
    int level = 1;       // 1..4
    std::string source;  // "spec" or a fact reference such as "extremum:Age,Mortality rate"

    bool operator==(const Sentence&) const = default;
};

struct Description {
    std::string chart_id;
    std::vector<Sentence> sentences;

    /// Sentences joined by single spaces.
    std::string text() const;
    bool operator==(const Description&) const = default;
};

/// Facts and trends computed for one chart, in emission order.
struct FactSet {
    std::vector<Fact> facts;
    std::vector<TrendFact> trends;
};

struct ComposeOptions {
    std::set<int> levels{1, 2, 3};
    Style style = Style::templatized;
    Thresholds thresholds;
    const TemplateTable* templates = nullptr;  // defaults when null
};

/// Chart type, title, axes, legend and spec annotations. All sentences are level 1.
Description realize_level1(const ValidatedChart& chart, const TemplateTable& templates = TemplateTable::defaults());

/// Errors: "unknown-fact-kind", plus template errors.
Sentence realize_fact(const Fact& fact, Style style, const TemplateTable& templates = TemplateTable::defaults());
Sentence realize_fact(const TrendFact& fact, Style style, const TemplateTable& templates = TemplateTable::defaults());

/// Runs the Level 2 and Level 3 pipelines suited to the chart's mark.
/// Optional facts whose preconditions fail are skipped. Facts sharing
/// (kind, provenance columns, provenance groups) are emitted once.
FactSet extract_facts(const ValidatedChart& chart, const Thresholds& t = {});

/// Realizes the requested levels in ascending order. Error "invalid-levels"
/// when levels is empty or contains anything outside {1, 2, 3}.
Description compose_description(const ValidatedChart& chart, const ComposeOptions& options = {});

/// Capitalized, whitespace-normalized, with terminal punctuation.
std::string finish_sentence(std::string_view text);

/// Parses "1,2,3" style level lists. Error "invalid-levels".
std::set<int> parse_levels(std::string_view text);

}  // namespace chartdesc
