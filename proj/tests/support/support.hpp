#pragma once

#include "chartdesc/chart_spec.hpp"
#include "chartdesc/rankstats.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <string>
#include <vector>

namespace testsupport {

inline std::filesystem::path fixture(const std::string& name) {
    return std::filesystem::path(CHARTDESC_FIXTURE_DIR) / name;
}

inline chartdesc::ValidatedChart load_chart(const std::string& spec_name) {
    auto spec = chartdesc::load_spec(fixture(spec_name));
    auto data = chartdesc::load_spec_data(spec, fixture(""));
    return chartdesc::validate_spec(spec, data);
}

/// LaTeX typography in quoted sentences (``x'', \%) as plain text.
inline std::string plain_quotes(std::string s) {
    const std::pair<std::string, std::string> subs[] = {{"``", "\""}, {"''", "\""}, {"\\%", "%"}};
    for (const auto& [from, to] : subs) {
        std::size_t pos = 0;
        while ((pos = s.find(from, pos)) != std::string::npos) {
            s.replace(pos, from.size(), to);
            pos += to.size();
        }
    }
    return s;
}

/// 456 rows: 120 structured orderings plus 14 copies of each of the 24
/// permutations. Blind: L2/L3 high, L1/L4 low. Sighted: L1 < L2 < L3 = L4.
inline chartdesc::RankingMatrix study_shaped_matrix(bool blind) {
    const std::vector<std::array<int, 4>> structured =
        blind ? std::vector<std::array<int, 4>>{{1, 4, 3, 2}, {2, 3, 4, 1}, {1, 3, 4, 2}, {2, 4, 3, 1}}
              : std::vector<std::array<int, 4>>{{1, 2, 3, 4}, {1, 2, 4, 3}};
    chartdesc::RankingMatrix m;
    m.k = 4;
    const std::size_t per = 120 / structured.size();
    for (const auto& p : structured)
        for (std::size_t i = 0; i < per; ++i) m.rows.push_back({p.begin(), p.end()});
    std::array<int, 4> p{1, 2, 3, 4};
    do {
        for (int i = 0; i < 14; ++i) m.rows.push_back({p.begin(), p.end()});
    } while (std::next_permutation(p.begin(), p.end()));
    return m;
}

}  // namespace testsupport
