#include "chartdesc/output.hpp"

#include "chartdesc/error.hpp"
#include "chartdesc/text.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace chartdesc {

using ojson = nlohmann::ordered_json;

std::optional<OutputFormat> output_format_from_string(std::string_view s) {
    if (s == "text") return OutputFormat::text;
    if (s == "json" || s == "structured") return OutputFormat::json;
    if (s == "html") return OutputFormat::html;
    if (s == "svg") return OutputFormat::svg;
    return std::nullopt;
}

namespace {

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

ojson number_or_null(double v) {
    return std::isfinite(v) ? ojson(v) : ojson(nullptr);
}

ojson provenance_json(const Provenance& p) {
    return {{"columns", p.columns}, {"groups", p.groups}};
}

ojson labels_json(const FactLabels& l) {
    ojson o;
    o["measure"] = l.measure;
    if (l.unit) o["unit"] = *l.unit;
    return o;
}

}  // namespace

ojson to_json(const Fact& f) {
    ojson o;
    o["kind"] = std::string(to_string(f.kind));
    o["level"] = f.level;
    ojson p;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, SummaryStats>) {
                p = {{"mean", v.mean}, {"median", v.median}, {"stdev", v.stdev}, {"min", v.min}, {"max", v.max}, {"n", v.n}};
            } else if constexpr (std::is_same_v<T, Extremum>) {
                p = {{"max_categories", v.max_categories},
                     {"max_value", v.max_value},
                     {"min_categories", v.min_categories},
                     {"min_value", v.min_value}};
            } else if constexpr (std::is_same_v<T, Outliers>) {
                p = {{"values", v.values}, {"rows", v.rows},       {"labels", v.labels},          {"q1", v.q1},
                     {"q3", v.q3},         {"lower_fence", v.lower_fence}, {"upper_fence", v.upper_fence}};
            } else if constexpr (std::is_same_v<T, Correlation>) {
                p = {{"pearson_r", v.r},
                     {"strength", std::string(to_string(v.strength))},
                     {"direction", std::string(to_string(v.direction))},
                     {"n", v.n}};
            } else if constexpr (std::is_same_v<T, Comparison>) {
                p = {{"a", v.a_label},
                     {"a_value", v.a},
                     {"b", v.b_label},
                     {"b_value", v.b},
                     {"relation", std::string(to_string(v.relation))},
                     {"difference", v.difference},
                     {"relative_difference", v.relative_difference}};
            } else if constexpr (std::is_same_v<T, SharedValue>) {
                p = {{"groups", v.groups}, {"values", v.values}};
            } else if constexpr (std::is_same_v<T, GroupMeans>) {
                ojson means = ojson::array();
                for (const auto& [k, m] : v.means) means.push_back({{"key", k}, {"mean", m}});
                p = {{"group", v.group}, {"means", means}};
            }
        },
        f.payload);
    o["params"] = p;
    o["provenance"] = provenance_json(f.provenance);
    o["labels"] = labels_json(f.labels);
    return o;
}

ojson to_json(const TrendFact& f) {
    ojson o;
    o["kind"] = std::string(to_string(f.kind));
    o["level"] = f.level;
    o["heuristic"] = f.heuristic;
    ojson p;
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, TrendClassification>) {
                p = {{"direction", std::string(to_string(v.direction))},
                     {"fluctuating", v.fluctuating},
                     {"slope", v.slope},
                     {"normalized_slope", v.normalized_slope},
                     {"r2", v.r2},
                     {"sign_changes", v.sign_changes}};
            } else if constexpr (std::is_same_v<T, ExceptionWindow>) {
                p = {{"start", v.start}, {"end", v.end}, {"series", v.series}, {"series_total", v.series_total}};
            } else if constexpr (std::is_same_v<T, DispersionComparison>) {
                ojson scores = ojson::array();
                for (const auto& [g, s] : v.scores) scores.push_back({{"group", g}, {"score", s}});
                p = {{"scores", scores}};
            } else if constexpr (std::is_same_v<T, SeparationResult>) {
                p = {{"a", v.a},
                     {"b", v.b},
                     {"score", number_or_null(v.score)},
                     {"centroid_distance", v.centroid_distance},
                     {"spread_sum", v.spread_sum},
                     {"verdict", v.gap ? "gap" : "overlap"}};
            } else if constexpr (std::is_same_v<T, GrowthShape>) {
                p = {{"shape", v.exponential ? "exponential-like" : "linear"},
                     {"r2_linear", v.r2_linear},
                     {"r2_log", v.r2_log}};
            }
        },
        f.payload);
    o["params"] = p;
    o["provenance"] = provenance_json(f.provenance);
    o["labels"] = labels_json(f.labels);
    return o;
}

ojson to_json(const Sentence& s) {
    return {{"text", s.text}, {"level", s.level}, {"source", s.source}};
}

std::string html_escape(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

namespace {

// Sentences of one level in a row become one paragraph.
std::vector<std::pair<int, std::string>> paragraphs(const Description& d) {
    std::vector<std::pair<int, std::string>> out;
    for (const auto& s : d.sentences) {
        if (out.empty() || out.back().first != s.level) out.push_back({s.level, s.text});
        else out.back().second += " " + s.text;
    }
    return out;
}

std::string html_id(std::string_view chart_id) {
    std::string id = "chartdesc";
    if (!chart_id.empty()) id += "-";
    for (char c : chart_id) id.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
    return id + "-long";
}

}  // namespace

OutputDocument render_description(const Description& d, OutputFormat format, const std::set<int>& levels, Style style,
                                  const FactSet* facts) {
    OutputDocument doc;
    doc.format = format;
    doc.long_description = d;
    for (const auto& s : d.sentences)
        if (s.level == 1) {
            doc.short_description = s.text;
            break;
        }

    switch (format) {
        case OutputFormat::text: {
            for (const auto& [level, text] : paragraphs(d)) doc.body += text + "\n";
            break;
        }
        case OutputFormat::json: {
            ojson o;
            o["schema_version"] = kSchemaVersion;
            o["chart_id"] = d.chart_id;
            o["levels"] = levels;
            o["style"] = std::string(to_string(style));
            o["short_description"] = doc.short_description;
            ojson sentences = ojson::array();
            for (const auto& s : d.sentences) sentences.push_back(to_json(s));
            o["sentences"] = sentences;
            if (facts) {
                ojson fs = ojson::array();
                for (const auto& f : facts->facts) fs.push_back(to_json(f));
                ojson ts = ojson::array();
                for (const auto& t : facts->trends) ts.push_back(to_json(t));
                o["facts"] = fs;
                o["trends"] = ts;
            }
            doc.body = o.dump(2) + "\n";
            break;
        }
        case OutputFormat::html: {
            const std::string id = html_id(d.chart_id);
            const std::string name = doc.short_description.empty() && !d.sentences.empty() ? d.sentences.front().text
                                                                                          : doc.short_description;
            std::ostringstream os;
            os << "<figure class=\"chartdesc-figure\" role=\"img\" aria-label=\"" << html_escape(name)
               << "\" aria-describedby=\"" << id << "\">\n"
               << "  <div class=\"chartdesc-chart\"></div>\n"
               << "</figure>\n"
               << "<div id=\"" << id << "\" class=\"chartdesc-long-description\">\n";
            for (const auto& [level, text] : paragraphs(d))
                os << "  <p data-level=\"" << level << "\">" << html_escape(text) << "</p>\n";
            os << "</div>\n";
            doc.body = os.str();
            break;
        }
        case OutputFormat::svg:
            throw Error("unsupported-format", "descriptions render as text, json or html");
    }
    return doc;
}

// ---- corpus reports -------------------------------------------------------------

std::string render_corpus_stats(const Corpus& corpus, std::optional<Facet> facet, OutputFormat format) {
    const auto dist = level_distribution(corpus, facet);
    if (format == OutputFormat::json) {
        ojson o;
        o["schema_version"] = kSchemaVersion;
        o["sentences"] = corpus.sentence_count();
        o["descriptions"] = corpus.description_count();
        o["charts"] = corpus.chart_count();
        o["facet"] = facet ? ojson(std::string(to_string(*facet))) : ojson(nullptr);
        ojson rows = ojson::array();
        for (const auto& d : dist) {
            ojson r;
            r["value"] = d.facet_value;
            r["total"] = d.total;
            r["counts"] = {{"1", d.counts[0]}, {"2", d.counts[1]}, {"3", d.counts[2]}, {"4", d.counts[3]}};
            r["proportions"] = {{"1", d.proportions[0]}, {"2", d.proportions[1]}, {"3", d.proportions[2]},
                                {"4", d.proportions[3]}};
            rows.push_back(r);
        }
        o["distribution"] = rows;
        return o.dump(2) + "\n";
    }
    if (format != OutputFormat::text) throw Error("unsupported-format", "corpus stats render as text or json");
    std::ostringstream os;
    os << "sentences: " << corpus.sentence_count() << "\n"
       << "descriptions: " << corpus.description_count() << "\n"
       << "charts: " << corpus.chart_count() << "\n\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %8s %8s %8s %8s %8s\n", facet ? std::string(to_string(*facet)).c_str() : "",
                  "total", "L1", "L2", "L3", "L4");
    os << line;
    for (const auto& d : dist) {
        std::snprintf(line, sizeof line, "%-12s %8zu %7.1f%% %7.1f%% %7.1f%% %7.1f%%\n", d.facet_value.c_str(), d.total,
                      100.0 * d.proportions[0], 100.0 * d.proportions[1], 100.0 * d.proportions[2],
                      100.0 * d.proportions[3]);
        os << line;
    }
    return os.str();
}

namespace {

constexpr const char* kLevelColors[4] = {"#6a3d9a", "#1f78b4", "#33a02c", "#ff7f00"};

}  // namespace

std::string render_fingerprint(const Corpus& corpus, std::string_view chart_id, OutputFormat format) {
    const auto prints = fingerprint(corpus, chart_id);
    switch (format) {
        case OutputFormat::json: {
            ojson o;
            o["schema_version"] = kSchemaVersion;
            o["chart_id"] = std::string(chart_id);
            ojson rows = ojson::array();
            for (const auto& f : prints) rows.push_back({{"participant_id", f.participant_id}, {"levels", f.levels}});
            o["descriptions"] = rows;
            return o.dump(2) + "\n";
        }
        case OutputFormat::text: {
            std::size_t width = 0;
            for (const auto& f : prints) width = std::max(width, f.participant_id.size());
            std::ostringstream os;
            os << "chart " << chart_id << ": " << prints.size() << " descriptions\n";
            for (const auto& f : prints) {
                os << f.participant_id << std::string(width - f.participant_id.size() + 2, ' ');
                for (int l : f.levels) os << "[" << l << "]";
                os << "\n";
            }
            return os.str();
        }
        case OutputFormat::svg: {
            constexpr int cell = 16, label_w = 90;
            std::size_t longest = 0;
            for (const auto& f : prints) longest = std::max(longest, f.levels.size());
            const auto w = label_w + static_cast<int>(longest) * cell + 4;
            const auto h = static_cast<int>(prints.size()) * (cell + 4) + 4;
            std::ostringstream os;
            os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" role=\"img\""
               << " aria-label=\"Sentence level fingerprint of chart " << html_escape(chart_id) << "\">\n";
            int y = 4;
            for (const auto& f : prints) {
                os << "  <text x=\"0\" y=\"" << y + cell - 4 << "\" font-size=\"11\">" << html_escape(f.participant_id)
                   << "</text>\n";
                int x = label_w;
                for (int l : f.levels) {
                    os << "  <rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell - 1 << "\" height=\"" << cell
                       << "\" fill=\"" << kLevelColors[l - 1] << "\"><title>Level " << l << "</title></rect>\n";
                    x += cell;
                }
                y += cell + 4;
            }
            os << "</svg>\n";
            return os.str();
        }
        case OutputFormat::html: break;
    }
    throw Error("unsupported-format", "fingerprints render as text, json or svg");
}

std::string render_breakdown(const Corpus& corpus, OutputFormat format) {
    const auto b = curation_breakdown(corpus);
    const std::vector<std::pair<const char*, const std::vector<std::pair<std::string, std::size_t>>*>> dims{
        {"chart_type", &b.chart_type}, {"topic", &b.topic}, {"difficulty", &b.difficulty}};
    if (format == OutputFormat::json) {
        ojson o;
        o["schema_version"] = kSchemaVersion;
        o["charts"] = b.charts;
        for (const auto& [name, counts] : dims) {
            ojson d;
            for (const auto& [k, n] : *counts) d[k] = n;
            o[name] = d;
        }
        return o.dump(2) + "\n";
    }
    if (format != OutputFormat::text) throw Error("unsupported-format", "breakdown renders as text or json");
    std::ostringstream os;
    os << "charts: " << b.charts << "\n";
    for (const auto& [name, counts] : dims) {
        os << name << ":";
        for (const auto& [k, n] : *counts) os << " " << k << " " << n;
        os << "\n";
    }
    return os.str();
}

// ---- evaluation report ----------------------------------------------------------

std::string render_evaluation(const std::vector<GroupEvaluation>& groups, OutputFormat format) {
    if (format == OutputFormat::json) {
        ojson o;
        o["schema_version"] = kSchemaVersion;
        ojson gs = ojson::array();
        for (const auto& g : groups) {
            ojson j;
            j["group"] = std::string(to_string(g.group));
            j["responses"] = g.responses;
            j["rejected"] = g.rejected;
            j["analysed"] = g.matrix.n();
            j["heatmap"] = g.heatmap;
            ojson cells = ojson::array();
            for (const auto& [r, c] : g.regions.cells) cells.push_back({r, c});
            ojson regions = ojson::array();
            for (const auto& reg : g.regions.regions) {
                ojson cs = ojson::array();
                for (const auto& [r, c] : reg) cs.push_back({r, c});
                regions.push_back(cs);
            }
            j["threshold"] = {{"mean", g.regions.mean},
                              {"stdev", g.regions.stdev},
                              {"value", g.regions.threshold},
                              {"cells", cells},
                              {"regions", regions}};
            j["friedman"] = {{"q", g.friedman.q}, {"df", g.friedman.df}, {"p", g.friedman.p}, {"n", g.friedman.n},
                             {"rank_sums", g.friedman.rank_sums}};
            ojson pairs = ojson::array();
            for (const auto& p : g.nemenyi.pairs)
                pairs.push_back({{"a", std::string(kRankItems[p.a])},
                                 {"b", std::string(kRankItems[p.b])},
                                 {"difference", p.difference},
                                 {"p", p.p},
                                 {"significant", p.significant}});
            j["nemenyi"] = {{"alpha", g.nemenyi.alpha},
                            {"q_critical", g.nemenyi.q_critical},
                            {"critical_difference", g.nemenyi.critical_difference},
                            {"mean_ranks", g.nemenyi.mean_ranks},
                            {"pairs", pairs}};
            gs.push_back(j);
        }
        o["groups"] = gs;
        return o.dump(2) + "\n";
    }
    if (format != OutputFormat::text) throw Error("unsupported-format", "evaluation renders as text or json");

    std::ostringstream os;
    for (const auto& g : groups) {
        os << "group " << to_string(g.group) << "\n"
           << "  responses " << g.responses << ", failed attention check " << g.rejected << ", analysed "
           << g.matrix.n() << "\n"
           << "  rank counts (* above threshold)\n"
           << "           rank 1    rank 2    rank 3    rank 4\n";
        for (std::size_t j = 0; j < g.heatmap.size(); ++j) {
            os << "    " << kRankItems[j] << "  ";
            for (std::size_t r = 0; r < g.heatmap[j].size(); ++r) {
                const bool hot = static_cast<double>(g.heatmap[j][r]) > g.regions.threshold;
                char cellbuf[32];
                std::snprintf(cellbuf, sizeof cellbuf, "%9zu%c", g.heatmap[j][r], hot ? '*' : ' ');
                os << cellbuf;
            }
            os << "\n";
        }
        os << "  threshold mean + sd/2 = " << fixed(g.regions.threshold, 2) << " (mean " << fixed(g.regions.mean, 2)
           << ", sd " << fixed(g.regions.stdev, 2) << "), " << g.regions.regions.size() << " region(s)\n"
           << "  friedman Q = " << fixed(g.friedman.q, 3) << ", df = " << g.friedman.df << ", p = "
           << general(g.friedman.p) << "\n"
           << "  nemenyi alpha = " << general(g.nemenyi.alpha) << ", CD = " << fixed(g.nemenyi.critical_difference, 3)
           << "\n"
           << "    pair     diff        p  significant\n";
        for (const auto& p : g.nemenyi.pairs) {
            char row[96];
            std::snprintf(row, sizeof row, "    %sx%s %8.3f %8.4g  %s\n", std::string(kRankItems[p.a]).c_str(),
                          std::string(kRankItems[p.b]).c_str(), p.difference, p.p, p.significant ? "yes" : "no");
            os << row;
        }
    }
    return os.str();
}

std::string error_json(std::string_view kind, std::string_view message, std::optional<std::size_t> line) {
    ojson e;
    e["kind"] = std::string(kind);
    e["message"] = std::string(message);
    if (line) e["line"] = *line;
    ojson o;
    o["error"] = e;
    return o.dump();
}

}  // namespace chartdesc
