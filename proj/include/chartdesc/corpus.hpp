#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chartdesc {

enum class ChartType { bar, line, scatter };
enum class Topic { academic, business, journalism };
enum class Difficulty { easy, medium, hard };
enum class Facet { chart_type, topic, difficulty };

std::string_view to_string(ChartType v);
std::string_view to_string(Topic v);
std::string_view to_string(Difficulty v);
std::string_view to_string(Facet v);
std::optional<Facet> facet_from_string(std::string_view s);

struct CorpusSentence {
    std::string chart_id;
    ChartType chart_type = ChartType::bar;
    Topic topic = Topic::academic;
    Difficulty difficulty = Difficulty::easy;
    std::string participant_id;
    std::size_t sentence_index = 0;
    std::string text;
    int level = 1;  // 1..4

    bool operator==(const CorpusSentence&) const = default;
};

struct Corpus {
    std::vector<CorpusSentence> sentences;  // file order

    std::size_t sentence_count() const { return sentences.size(); }
    /// Distinct (chart_id, participant_id) pairs.
    std::size_t description_count() const;
    std::size_t chart_count() const;
};

/// Native JSONL, one sentence object per line. Field names and level
/// spellings from other exports are mapped by the adapter (see README).
/// Errors carry the 1-based line: "invalid-level", "unknown-enum",
/// "duplicate-record", "missing-field", "inconsistent-chart", "syntax".
Corpus parse_corpus_jsonl(std::string_view text);
/// Same record layout as export_csv, header row required.
Corpus parse_corpus_csv(std::string_view text);
/// Format chosen by extension: .csv, anything else JSONL. Error "corpus-not-found".
Corpus load_corpus(const std::filesystem::path& path);

std::string export_jsonl(const Corpus& corpus);
std::string export_csv(const Corpus& corpus);

struct LevelDistribution {
    std::string facet_value;  // "all" without a facet
    std::size_t total = 0;
    std::array<std::size_t, 4> counts{};
    std::array<double, 4> proportions{};
};

/// Share of sentences at each level, overall or per facet value (enum
/// order, values without sentences omitted). Error "empty-corpus".
std::vector<LevelDistribution> level_distribution(const Corpus& corpus, std::optional<Facet> facet = std::nullopt);

struct Fingerprint {
    std::string participant_id;
    std::vector<int> levels;  // in sentence order
};

/// One level sequence per description of the chart, ordered by
/// participant id. Error "unknown-chart".
std::vector<Fingerprint> fingerprint(const Corpus& corpus, std::string_view chart_id);

struct CurationBreakdown {
    std::size_t charts = 0;
    std::vector<std::pair<std::string, std::size_t>> chart_type;
    std::vector<std::pair<std::string, std::size_t>> topic;
    std::vector<std::pair<std::string, std::size_t>> difficulty;
};

/// Distinct charts per type, topic and difficulty (all enum values listed).
CurationBreakdown curation_breakdown(const Corpus& corpus);

}  // namespace chartdesc
