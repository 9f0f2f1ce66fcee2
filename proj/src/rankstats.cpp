#include "chartdesc/rankstats.hpp"

#include "chartdesc/distributions.hpp"
#include "chartdesc/error.hpp"
#include "chartdesc/tabular.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <tuple>

namespace chartdesc {

std::string_view to_string(ReaderGroup g) {
    return g == ReaderGroup::blind ? "blind" : "sighted";
}

std::optional<ReaderGroup> reader_group_from_string(std::string_view s) {
    if (s == "blind") return ReaderGroup::blind;
    if (s == "sighted") return ReaderGroup::sighted;
    return std::nullopt;
}

void check_permutation(const std::vector<int>& row) {
    std::vector<bool> seen(row.size() + 1, false);
    for (int r : row) {
        if (r < 1 || static_cast<std::size_t>(r) > row.size() || seen[static_cast<std::size_t>(r)])
            throw Error("malformed-ranks", "ranks must be a permutation of 1.." + std::to_string(row.size()) +
                                               " without ties");
        seen[static_cast<std::size_t>(r)] = true;
    }
}

FilterResult attention_filter(const std::vector<RankingResponse>& responses) {
    FilterResult out;
    out.matrix.k = 4;
    for (const auto& resp : responses) {
        check_permutation(std::vector<int>(resp.ranks.begin(), resp.ranks.end()));
        if (resp.ranks[kDecoy] != 1) {
            ++out.rejected;
            continue;
        }
        std::vector<int> row(4);
        for (std::size_t j = 0; j < 4; ++j) row[j] = resp.ranks[j] - 1;
        out.matrix.rows.push_back(std::move(row));
    }
    return out;
}

namespace {

void check_matrix(const RankingMatrix& m, std::size_t min_k) {
    if (m.n() < 2) throw Error("degenerate-matrix", "need at least 2 rows, got " + std::to_string(m.n()));
    if (m.k < min_k) throw Error("degenerate-matrix", "need at least " + std::to_string(min_k) + " columns");
    for (const auto& row : m.rows) {
        if (row.size() != m.k) throw Error("degenerate-matrix", "row length differs from k");
        try {
            check_permutation(row);
        } catch (const Error& e) {
            throw Error("degenerate-matrix", e.what());
        }
    }
}

std::vector<double> rank_sums(const RankingMatrix& m) {
    std::vector<double> sums(m.k, 0.0);
    for (const auto& row : m.rows)
        for (std::size_t j = 0; j < m.k; ++j) sums[j] += row[j];
    return sums;
}

double friedman_q(const std::vector<double>& sums, double n, double k) {
    double ss = 0.0;
    for (double r : sums) ss += r * r;
    const double q = 12.0 / (n * k * (k + 1.0)) * ss - 3.0 * n * (k + 1.0);
    return q < 0.0 && q > -1e-9 ? 0.0 : q;
}

}  // namespace

FriedmanResult friedman_test(const RankingMatrix& m) {
    check_matrix(m, 3);
    FriedmanResult r;
    r.n = m.n();
    r.k = m.k;
    r.rank_sums = rank_sums(m);
    r.q = friedman_q(r.rank_sums, static_cast<double>(r.n), static_cast<double>(r.k));
    r.df = static_cast<int>(r.k) - 1;
    r.p = chi_square_sf(r.q, r.df);
    return r;
}

double friedman_exact_p(const RankingMatrix& m) {
    check_matrix(m, 2);
    const double n = static_cast<double>(m.n()), kd = static_cast<double>(m.k);
    std::vector<std::vector<int>> perms;
    std::vector<int> p(m.k);
    std::iota(p.begin(), p.end(), 1);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    if (std::pow(static_cast<double>(perms.size()), n) > 1e7)
        throw Error("too-large", "exact enumeration limited to 10^7 rank assignments");

    const double observed = friedman_q(rank_sums(m), n, kd);
    std::vector<std::size_t> idx(m.n(), 0);
    std::size_t hits = 0, total = 0;
    std::vector<double> sums(m.k);
    while (true) {
        std::fill(sums.begin(), sums.end(), 0.0);
        for (std::size_t i = 0; i < m.n(); ++i)
            for (std::size_t j = 0; j < m.k; ++j) sums[j] += perms[idx[i]][j];
        if (friedman_q(sums, n, kd) >= observed - 1e-9) ++hits;
        ++total;
        std::size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == perms.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

const PairComparison& NemenyiResult::pair(std::size_t a, std::size_t b) const {
    if (a > b) std::swap(a, b);
    for (const auto& p : pairs)
        if (p.a == a && p.b == b) return p;
    throw Error("domain", "no such pair");
}

double nemenyi_critical_difference(std::size_t k, std::size_t n, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error("unsupported-alpha", "alpha must lie in (0, 1)");
    if (k < 2 || k > 50) throw Error("unsupported-alpha", "no studentized range quantile for k = " + std::to_string(k));
    const double q = studentized_range_quantile(1.0 - alpha, static_cast<int>(k));
    const double kd = static_cast<double>(k);
    return q * std::sqrt(kd * (kd + 1.0) / (12.0 * static_cast<double>(n)));
}

NemenyiResult nemenyi_posthoc(const RankingMatrix& m, double alpha) {
    check_matrix(m, 2);
    NemenyiResult r;
    r.alpha = alpha;
    r.critical_difference = nemenyi_critical_difference(m.k, m.n(), alpha);
    const double kd = static_cast<double>(m.k), n = static_cast<double>(m.n());
    r.q_critical = r.critical_difference / std::sqrt(kd * (kd + 1.0) / (12.0 * n));
    const double se = std::sqrt(kd * (kd + 1.0) / (12.0 * n));
    for (double s : rank_sums(m)) r.mean_ranks.push_back(s / n);
    for (std::size_t a = 0; a < m.k; ++a) {
        for (std::size_t b = a + 1; b < m.k; ++b) {
            PairComparison pc;
            pc.a = a;
            pc.b = b;
            pc.difference = r.mean_ranks[a] - r.mean_ranks[b];
            pc.p = 1.0 - studentized_range_cdf(std::fabs(pc.difference) / se, static_cast<int>(m.k));
            pc.significant = std::fabs(pc.difference) > r.critical_difference;
            r.pairs.push_back(pc);
        }
    }
    return r;
}

std::vector<PairComparison> nemenyi_permutation(const RankingMatrix& m, double alpha, std::size_t permutations,
                                                std::uint64_t seed) {
    check_matrix(m, 2);
    if (permutations == 0) throw Error("domain", "need at least one permutation");
    const double n = static_cast<double>(m.n());
    const auto mean_ranks = [&](const std::vector<std::vector<int>>& rows) {
        std::vector<double> s(m.k, 0.0);
        for (const auto& row : rows)
            for (std::size_t j = 0; j < m.k; ++j) s[j] += row[j];
        for (double& v : s) v /= n;
        return s;
    };
    const auto observed = mean_ranks(m.rows);

    std::vector<PairComparison> pairs;
    for (std::size_t a = 0; a < m.k; ++a)
        for (std::size_t b = a + 1; b < m.k; ++b) pairs.push_back({a, b, observed[a] - observed[b], 0.0, false});

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> exceed(pairs.size(), 0);
    auto rows = m.rows;
    for (std::size_t it = 0; it < permutations; ++it) {
        for (auto& row : rows) {
            for (std::size_t i = row.size() - 1; i > 0; --i) std::swap(row[i], row[rng() % (i + 1)]);
        }
        const auto mr = mean_ranks(rows);
        const auto [lo, hi] = std::minmax_element(mr.begin(), mr.end());
        const double max_diff = *hi - *lo;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (max_diff >= std::fabs(pairs[p].difference) - 1e-12) ++exceed[p];
    }
    for (std::size_t p = 0; p < pairs.size(); ++p) {
        pairs[p].p = (static_cast<double>(exceed[p]) + 1.0) / (static_cast<double>(permutations) + 1.0);
        pairs[p].significant = pairs[p].p < alpha;
    }
    return pairs;
}

CountMatrix rank_heatmap(const RankingMatrix& m) {
    CountMatrix h(m.k, std::vector<std::size_t>(m.k, 0));
    for (const auto& row : m.rows) {
        check_permutation(row);
        for (std::size_t j = 0; j < m.k; ++j) ++h[j][static_cast<std::size_t>(row[j] - 1)];
    }
    return h;
}

ThresholdRegions threshold_regions(const CountMatrix& h) {
    ThresholdRegions out;
    std::size_t cells = 0;
    double sum = 0.0;
    for (const auto& row : h)
        for (std::size_t v : row) {
            sum += static_cast<double>(v);
            ++cells;
        }
    if (cells == 0) return out;
    out.mean = sum / static_cast<double>(cells);
    double ss = 0.0;
    for (const auto& row : h)
        for (std::size_t v : row) ss += (static_cast<double>(v) - out.mean) * (static_cast<double>(v) - out.mean);
    out.stdev = std::sqrt(ss / static_cast<double>(cells));
    out.threshold = out.mean + out.stdev / 2.0;

    std::vector<std::vector<bool>> above(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        above[i].resize(h[i].size());
        for (std::size_t j = 0; j < h[i].size(); ++j) {
            above[i][j] = static_cast<double>(h[i][j]) > out.threshold;
            if (above[i][j]) out.cells.push_back({i, j});
        }
    }
    std::vector<std::vector<bool>> seen(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) seen[i].assign(h[i].size(), false);
    for (const auto& start : out.cells) {
        if (seen[start.first][start.second]) continue;
        std::vector<Cell> region, stack{start};
        seen[start.first][start.second] = true;
        while (!stack.empty()) {
            const auto [i, j] = stack.back();
            stack.pop_back();
            region.push_back({i, j});
            const auto visit = [&](std::size_t a, std::size_t b) {
                if (a < h.size() && b < h[a].size() && above[a][b] && !seen[a][b]) {
                    seen[a][b] = true;
                    stack.push_back({a, b});
                }
            };
            visit(i - 1, j);
            visit(i + 1, j);
            visit(i, j - 1);
            visit(i, j + 1);
        }
        std::sort(region.begin(), region.end());
        out.regions.push_back(std::move(region));
    }
    return out;
}

std::vector<RankingResponse> parse_rankings(std::string_view csv_text) {
    const auto records = parse_csv(csv_text);
    if (records.empty()) throw Error("rankings-syntax", "rankings file is empty", 1);
    const std::vector<std::string> expected{"reader_id", "group", "chart_id", "item", "rank"};
    if (records.front() != expected)
        throw Error("rankings-syntax", "header must be reader_id,group,chart_id,item,rank", 1);

    struct Pending {
        RankingResponse resp;
        std::array<bool, 5> seen{};
        std::size_t first_line = 0;
    };
    std::vector<Pending> pending;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;

    for (std::size_t r = 1; r < records.size(); ++r) {
        const auto& rec = records[r];
        const std::size_t line = r + 1;
        if (rec.size() == 1 && rec[0].empty()) continue;
        const auto group = reader_group_from_string(rec[1]);
        if (!group) throw Error("rankings-syntax", "unknown reader group '" + rec[1] + "'", line);
        const auto item_it = std::find(kRankItems.begin(), kRankItems.end(), rec[3]);
        if (item_it == kRankItems.end()) throw Error("rankings-syntax", "unknown item '" + rec[3] + "'", line);
        const auto rank = parse_number(rec[4]);
        if (!rank || *rank != std::floor(*rank)) throw Error("rankings-syntax", "rank '" + rec[4] + "' is not an integer", line);

        const auto key = std::make_tuple(rec[0], rec[1], rec[2]);
        auto [it, inserted] = index.try_emplace(key, pending.size());
        if (inserted) {
            Pending p;
            p.resp.reader_id = rec[0];
            p.resp.group = *group;
            p.resp.chart_id = rec[2];
            p.first_line = line;
            pending.push_back(std::move(p));
        }
        Pending& p = pending[it->second];
        const auto item = static_cast<std::size_t>(item_it - kRankItems.begin());
        if (p.seen[item]) throw Error("malformed-ranks", "item '" + rec[3] + "' ranked twice", line);
        p.seen[item] = true;
        p.resp.ranks[item] = static_cast<int>(*rank);
    }

    std::vector<RankingResponse> out;
    for (auto& p : pending) {
        for (std::size_t i = 0; i < kRankItems.size(); ++i)
            if (!p.seen[i])
                throw Error("malformed-ranks", "response of reader '" + p.resp.reader_id + "' on chart '" +
                                                   p.resp.chart_id + "' has no rank for " + std::string(kRankItems[i]),
                            p.first_line);
        try {
            check_permutation(std::vector<int>(p.resp.ranks.begin(), p.resp.ranks.end()));
        } catch (const Error& e) {
            throw Error(e.kind(), std::string(e.what()) + " (reader '" + p.resp.reader_id + "', chart '" +
                                      p.resp.chart_id + "')",
                        p.first_line);
        }
        out.push_back(std::move(p.resp));
    }
    return out;
}

std::vector<RankingResponse> load_rankings(const std::filesystem::path& path) {
    return parse_rankings(read_text_file(path, "rankings-not-found"));
}

std::vector<GroupEvaluation> evaluate_rankings(const std::vector<RankingResponse>& responses, double alpha) {
    std::vector<GroupEvaluation> out;
    for (ReaderGroup g : {ReaderGroup::blind, ReaderGroup::sighted}) {
        std::vector<RankingResponse> mine;
        for (const auto& r : responses)
            if (r.group == g) mine.push_back(r);
        if (mine.empty()) continue;
        GroupEvaluation ev;
        ev.group = g;
        ev.responses = mine.size();
        auto filtered = attention_filter(mine);
        ev.rejected = filtered.rejected;
        ev.matrix = std::move(filtered.matrix);
        if (ev.matrix.rows.empty()) continue;
        ev.heatmap = rank_heatmap(ev.matrix);
        ev.regions = threshold_regions(ev.heatmap);
        ev.friedman = friedman_test(ev.matrix);
        ev.nemenyi = nemenyi_posthoc(ev.matrix, alpha);
        out.push_back(std::move(ev));
    }
    if (out.empty()) throw Error("no-responses", "no responses survive filtering");
    return out;
}

}  // namespace chartdesc
