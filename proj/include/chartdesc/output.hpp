#pragma once

#include "chartdesc/corpus.hpp"
#include "chartdesc/rankstats.hpp"
#include "chartdesc/realize.hpp"

#include "json.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace chartdesc {

inline constexpr int kSchemaVersion = 1;

enum class OutputFormat { text, json, html, svg };
std::optional<OutputFormat> output_format_from_string(std::string_view s);

struct OutputDocument {
    OutputFormat format = OutputFormat::text;
    std::string body;
    std::string short_description;  // first Level 1 sentence when present
    Description long_description;
};

nlohmann::ordered_json to_json(const Fact& fact);
nlohmann::ordered_json to_json(const TrendFact& fact);
nlohmann::ordered_json to_json(const Sentence& s);

/// Renders a composed description. `facts` adds the computed facts to the
/// structured form. Throws Error("unsupported-format") for svg.
OutputDocument render_description(const Description& d, OutputFormat format, const std::set<int>& levels, Style style,
                                  const FactSet* facts = nullptr);

std::string html_escape(std::string_view s);

std::string render_corpus_stats(const Corpus& corpus, std::optional<Facet> facet, OutputFormat format);
std::string render_fingerprint(const Corpus& corpus, std::string_view chart_id, OutputFormat format);
std::string render_breakdown(const Corpus& corpus, OutputFormat format);
std::string render_evaluation(const std::vector<GroupEvaluation>& groups, OutputFormat format);

/// {"error": {"kind", "message", "line"?}}
std::string error_json(std::string_view kind, std::string_view message, std::optional<std::size_t> line = std::nullopt);

}  // namespace chartdesc
