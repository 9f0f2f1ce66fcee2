#include "doctest.h"

#include "chartdesc/rankstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

using namespace chartdesc;

namespace {

constexpr int kCases = 1000;

RankingMatrix random_rankings(std::mt19937_64& rng, std::size_t n, std::size_t k) {
    RankingMatrix m;
    m.k = k;
    std::vector<int> row(k);
    std::iota(row.begin(), row.end(), 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::shuffle(row.begin(), row.end(), rng);
        m.rows.push_back(row);
    }
    return m;
}

// Q written around deviations from the expected rank sum.
double oracle_q(const RankingMatrix& m) {
    const double n = double(m.n()), k = double(m.k);
    double ss = 0;
    for (std::size_t j = 0; j < m.k; ++j) {
        double r = 0;
        for (const auto& row : m.rows) r += row[j];
        ss += (r - n * (k + 1) / 2) * (r - n * (k + 1) / 2);
    }
    return 12.0 / (n * k * (k + 1)) * ss;
}

// Exact p by walking every assignment of row permutations.
double oracle_exact_p(const RankingMatrix& m) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(m.k);
    std::iota(p.begin(), p.end(), 1);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    const double observed = oracle_q(m);
    std::vector<std::size_t> choice(m.n(), 0);
    std::size_t total = 0, extreme = 0;
    while (true) {
        RankingMatrix t;
        t.k = m.k;
        for (auto c : choice) t.rows.push_back(perms[c]);
        ++total;
        if (oracle_q(t) >= observed - 1e-9) ++extreme;
        std::size_t i = 0;
        while (i < choice.size() && ++choice[i] == perms.size()) choice[i++] = 0;
        if (i == choice.size()) break;
    }
    return double(extreme) / double(total);
}

CountMatrix random_counts(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dim(1, 6), val(0, 30);
    CountMatrix h(dim(rng), std::vector<std::size_t>(dim(rng)));
    for (auto& row : h)
        for (auto& c : row) c = val(rng);
    return h;
}

// Components by repeated flood fill over a visited grid.
std::vector<std::set<Cell>> oracle_regions(const CountMatrix& h, double threshold) {
    const std::size_t rows = h.size(), cols = h[0].size();
    std::vector<std::vector<int>> seen(rows, std::vector<int>(cols, 0));
    std::vector<std::set<Cell>> out;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            if (seen[r][c] || !(double(h[r][c]) > threshold)) continue;
            std::set<Cell> region;
            std::vector<Cell> stack{{r, c}};
            seen[r][c] = 1;
            while (!stack.empty()) {
                const auto [y, x] = stack.back();
                stack.pop_back();
                region.insert({y, x});
                const long dy[] = {-1, 1, 0, 0}, dx[] = {0, 0, -1, 1};
                for (int d = 0; d < 4; ++d) {
                    const long ny = long(y) + dy[d], nx = long(x) + dx[d];
                    if (ny < 0 || nx < 0 || ny >= long(rows) || nx >= long(cols)) continue;
                    if (seen[ny][nx] || !(double(h[ny][nx]) > threshold)) continue;
                    seen[ny][nx] = 1;
                    stack.push_back({std::size_t(ny), std::size_t(nx)});
                }
            }
            out.push_back(region);
        }
    return out;
}

}  // namespace

TEST_CASE("heatmap rows and columns sum to n") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> n_dist(1, 200), k_dist(2, 6);
    for (int c = 0; c < kCases; ++c) {
        const auto m = random_rankings(rng, n_dist(rng), k_dist(rng));
        const auto h = rank_heatmap(m);
        REQUIRE(h.size() == m.k);
        for (std::size_t j = 0; j < m.k; ++j) {
            std::size_t row = 0, col = 0;
            for (std::size_t r = 0; r < m.k; ++r) {
                row += h[j][r];
                col += h[r][j];
            }
            REQUIRE(row == m.n());
            REQUIRE(col == m.n());
        }
    }
}

TEST_CASE("threshold regions match a brute-force computation") {
    std::mt19937_64 rng(12);
    for (int c = 0; c < kCases; ++c) {
        const auto h = random_counts(rng);
        double sum = 0, cells = 0;
        for (const auto& row : h)
            for (auto v : row) sum += double(v), ++cells;
        const double mu = sum / cells;
        double ss = 0;
        for (const auto& row : h)
            for (auto v : row) ss += (double(v) - mu) * (double(v) - mu);
        const double threshold = mu + std::sqrt(ss / cells) / 2;

        const auto t = threshold_regions(h);
        REQUIRE(t.mean == doctest::Approx(mu).epsilon(1e-12));
        REQUIRE(t.threshold == doctest::Approx(threshold).epsilon(1e-12));

        const auto want = oracle_regions(h, threshold);
        std::set<std::set<Cell>> got_set, want_set(want.begin(), want.end());
        for (const auto& r : t.regions) got_set.insert(std::set<Cell>(r.begin(), r.end()));
        REQUIRE(got_set == want_set);
        std::size_t above = 0;
        for (const auto& r : want) above += r.size();
        REQUIRE(t.cells.size() == above);
    }
}

TEST_CASE("a 450-row, 1800-ranking group has cell mean 112.5") {
    std::mt19937_64 rng(13);
    for (int c = 0; c < 50; ++c) {
        const auto h = rank_heatmap(random_rankings(rng, 450, 4));
        REQUIRE(threshold_regions(h).mean == doctest::Approx(112.5));
    }
}

TEST_CASE("uniform heatmap has no regions") {
    const CountMatrix h(4, std::vector<std::size_t>(4, 450));
    const auto t = threshold_regions(h);
    CHECK(t.stdev == 0);
    CHECK(t.threshold == t.mean);
    CHECK(t.regions.empty());
}

TEST_CASE("friedman statistic matches the deviation form and its invariances") {
    std::mt19937_64 rng(14);
    std::uniform_int_distribution<std::size_t> n_dist(2, 60), k_dist(3, 6);
    for (int c = 0; c < kCases; ++c) {
        auto m = random_rankings(rng, n_dist(rng), k_dist(rng));
        const auto r = friedman_test(m);
        REQUIRE(r.q == doctest::Approx(oracle_q(m)).epsilon(1e-9));
        REQUIRE(r.q >= -1e-9);
        REQUIRE(r.q <= double(m.n() * (m.k - 1)) + 1e-9);
        REQUIRE(r.p >= 0);
        REQUIRE(r.p <= 1);
        REQUIRE(r.df == int(m.k) - 1);

        std::shuffle(m.rows.begin(), m.rows.end(), rng);
        REQUIRE(friedman_test(m).q == doctest::Approx(r.q).epsilon(1e-12));

        std::vector<std::size_t> cols(m.k);
        std::iota(cols.begin(), cols.end(), 0);
        std::shuffle(cols.begin(), cols.end(), rng);
        RankingMatrix relabeled;
        relabeled.k = m.k;
        for (const auto& row : m.rows) {
            std::vector<int> nr(m.k);
            for (std::size_t j = 0; j < m.k; ++j) nr[j] = row[cols[j]];
            relabeled.rows.push_back(nr);
        }
        REQUIRE(friedman_test(relabeled).q == doctest::Approx(r.q).epsilon(1e-12));

        RankingMatrix reversed = m;
        for (auto& row : reversed.rows)
            for (auto& v : row) v = int(m.k) + 1 - v;
        REQUIRE(friedman_test(reversed).q == doctest::Approx(r.q).epsilon(1e-12));
    }
}

TEST_CASE("exact friedman p matches a brute-force enumeration") {
    std::mt19937_64 rng(15);
    for (int c = 0; c < 100; ++c) {
        const auto m = random_rankings(rng, 2 + c % 3, 3);
        REQUIRE(friedman_exact_p(m) == doctest::Approx(oracle_exact_p(m)).epsilon(1e-12));
    }
}

TEST_CASE("nemenyi significance is symmetric and label-equivariant") {
    std::mt19937_64 rng(16);
    std::uniform_int_distribution<std::size_t> n_dist(2, 80), k_dist(3, 6);
    std::uniform_real_distribution<double> alpha(0.001, 0.2);
    for (int c = 0; c < kCases; ++c) {
        const auto m = random_rankings(rng, n_dist(rng), k_dist(rng));
        const double a = alpha(rng);
        const auto r = nemenyi_posthoc(m, a);
        REQUIRE(r.pairs.size() == m.k * (m.k - 1) / 2);

        RankingMatrix rev;
        rev.k = m.k;
        for (const auto& row : m.rows) rev.rows.emplace_back(row.rbegin(), row.rend());
        const auto rr = nemenyi_posthoc(rev, a);
        for (const auto& p : r.pairs) {
            REQUIRE(r.pair(p.b, p.a).significant == p.significant);
            const auto& mirrored = rr.pair(m.k - 1 - p.b, m.k - 1 - p.a);
            REQUIRE(mirrored.significant == p.significant);
            REQUIRE(mirrored.p == doctest::Approx(p.p).epsilon(1e-9));
            REQUIRE(p.significant == (std::abs(p.difference) > r.critical_difference));
            REQUIRE(p.p >= 0);
            REQUIRE(p.p <= 1);
        }
    }
}
