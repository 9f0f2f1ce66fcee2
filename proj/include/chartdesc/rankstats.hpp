#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace chartdesc {

enum class ReaderGroup { blind, sighted };
std::string_view to_string(ReaderGroup g);
std::optional<ReaderGroup> reader_group_from_string(std::string_view s);

/// Ranked items in column order; index 4 is the attention-check decoy.
inline constexpr std::array<std::string_view, 5> kRankItems{"L1", "L2", "L3", "L4", "decoy"};
inline constexpr std::size_t kDecoy = 4;

/// One reader's ranking of the five descriptions of one chart.
/// Rank 1 is least useful.
struct RankingResponse {
    std::string reader_id;
    ReaderGroup group = ReaderGroup::blind;
    std::string chart_id;
    std::array<int, 5> ranks{};  // indexed like kRankItems
};

/// Blocks (reader x chart) by treatments; each row is a permutation of 1..k.
struct RankingMatrix {
    std::size_t k = 4;
    std::vector<std::vector<int>> rows;

    std::size_t n() const { return rows.size(); }
};

/// Error "malformed-ranks" unless the row is a permutation of 1..size.
void check_permutation(const std::vector<int>& row);

struct FilterResult {
    RankingMatrix matrix;
    std::size_t rejected = 0;
};

/// Keeps responses that ranked the decoy least useful (rank 1), drops the
/// decoy and shifts the remaining ranks down to 1..4.
FilterResult attention_filter(const std::vector<RankingResponse>& responses);

struct FriedmanResult {
    double q = 0;
    int df = 0;
    double p = 1;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<double> rank_sums;
};

/// Q = 12 / (n k (k+1)) * sum R_j^2 - 3 n (k+1), p from chi-square(k-1).
/// Error "degenerate-matrix" for n < 2, k < 3 or rows that are not permutations.
FriedmanResult friedman_test(const RankingMatrix& m);

/// Exact p of the Friedman statistic by enumerating all (k!)^n rank
/// assignments. Error "too-large" beyond 10^7 assignments.
double friedman_exact_p(const RankingMatrix& m);

struct PairComparison {
    std::size_t a = 0;
    std::size_t b = 0;
    double difference = 0;  // mean rank of a minus mean rank of b
    double p = 1;
    bool significant = false;
};

struct NemenyiResult {
    double alpha = 0.05;
    double q_critical = 0;       // studentized range quantile at 1 - alpha
    double critical_difference = 0;
    std::vector<double> mean_ranks;
    std::vector<PairComparison> pairs;  // a < b, row-major

    const PairComparison& pair(std::size_t a, std::size_t b) const;
};

/// CD = q(1 - alpha, k, inf) * sqrt(k (k+1) / (12 n)); a pair is significant
/// when its mean-rank difference exceeds CD. Error "unsupported-alpha" for
/// alpha outside (0, 1) or k outside 2..50.
NemenyiResult nemenyi_posthoc(const RankingMatrix& m, double alpha = 0.05);

/// Critical difference alone, for tables.
double nemenyi_critical_difference(std::size_t k, std::size_t n, double alpha);

/// Permutation version of the pairwise p-values: ranks are shuffled within
/// rows and each pair's |difference| is compared with the largest pairwise
/// difference of every shuffle. Seeded, so results are reproducible.
std::vector<PairComparison> nemenyi_permutation(const RankingMatrix& m, double alpha, std::size_t permutations = 10000,
                                                std::uint64_t seed = 20210508);

using CountMatrix = std::vector<std::vector<std::size_t>>;

/// counts[j][r - 1] = number of rows giving treatment j rank r.
CountMatrix rank_heatmap(const RankingMatrix& m);

using Cell = std::pair<std::size_t, std::size_t>;

struct ThresholdRegions {
    double mean = 0;
    double stdev = 0;  // population
    double threshold = 0;
    std::vector<Cell> cells;                  // strictly above threshold, row-major
    std::vector<std::vector<Cell>> regions;   // 4-connected components of `cells`
};

/// threshold = mean + stdev / 2 over all cells.
ThresholdRegions threshold_regions(const CountMatrix& h);

/// Rankings CSV (reader_id,group,chart_id,item,rank), one row per item.
/// Errors "rankings-syntax" / "malformed-ranks" carry the CSV line number.
std::vector<RankingResponse> parse_rankings(std::string_view csv_text);
std::vector<RankingResponse> load_rankings(const std::filesystem::path& path);

struct GroupEvaluation {
    ReaderGroup group = ReaderGroup::blind;
    std::size_t responses = 0;
    std::size_t rejected = 0;
    RankingMatrix matrix;
    CountMatrix heatmap;
    ThresholdRegions regions;
    FriedmanResult friedman;
    NemenyiResult nemenyi;
};

/// Filters, tests and summarizes each reader group present, blind first.
/// Error "no-responses" when nothing survives the attention check.
std::vector<GroupEvaluation> evaluate_rankings(const std::vector<RankingResponse>& responses, double alpha = 0.05);

}  // namespace chartdesc
