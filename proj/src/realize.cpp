#include "chartdesc/realize.hpp"

#include "chartdesc/error.hpp"
#include "chartdesc/text.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

namespace chartdesc {

std::string_view to_string(Style s) {
    return s == Style::natural ? "natural" : "templatized";
}

std::optional<Style> style_from_string(std::string_view s) {
    if (s == "templatized") return Style::templatized;
    if (s == "natural") return Style::natural;
    return std::nullopt;
}

std::string Description::text() const {
    std::string out;
    for (const auto& s : sentences) {
        if (!out.empty()) out.push_back(' ');
        out += s.text;
    }
    return out;
}

std::string finish_sentence(std::string_view text) {
    std::string s = capitalize_first(normalize_whitespace(text));
    if (s.empty()) return s;
    const char last = s.back();
    if (last != '.' && last != '!' && last != '?') s.push_back('.');
    return s;
}

std::set<int> parse_levels(std::string_view text) {
    std::set<int> levels;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto item = normalize_whitespace(text.substr(pos, comma - pos));
        if (item.size() == 2 && (item[0] == 'L' || item[0] == 'l')) item.erase(0, 1);
        if (item.size() != 1 || item[0] < '1' || item[0] > '3')
            throw Error("invalid-levels", "levels must be drawn from 1, 2, 3; got '" + std::string(text) + "'");
        levels.insert(item[0] - '0');
        pos = comma + 1;
    }
    return levels;
}

namespace {

using OptUnit = std::optional<std::string_view>;

OptUnit unit_of(const std::optional<std::string>& u) {
    return u ? OptUnit(*u) : std::nullopt;
}

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += sep;
        out += items[i];
    }
    return out;
}

std::string source_of(std::string_view kind, const Provenance& p) {
    std::string s = std::string(kind) + ":" + join(p.columns, ",");
    if (!p.groups.empty()) s += "|" + join(p.groups, ",");
    return s;
}

// Position on a temporal axis, as a year when the extent spans two years or more.
std::string temporal_text(double v, bool as_year) {
    if (as_year) return std::to_string(static_cast<long long>(std::floor(v + 1e-9)));
    return format_iso_date(v);
}

std::string render_fallback(const TemplateTable& templates, const std::string& kind, const std::string& variant,
                            Style style, const TemplateVars& vars) {
    const std::string st(to_string(style));
    if (!variant.empty()) {
        const std::string key = kind + "." + variant + "." + st;
        if (templates.contains(key)) return templates.render(key, vars);
    }
    return templates.render(kind + "." + st, vars);
}

// ---- Level 1 ---------------------------------------------------------------

std::string axis_sentence_label(const Encoding& e) {
    std::string s = e.article ? *e.article + " " + e.label() : e.label();
    return capitalize_first(s);
}

std::string intro_label(const Encoding& e) {
    std::string s = e.label();
    if (e.unit && !unit_is_symbol(*e.unit)) s += " (" + title_case(*e.unit) + ")";
    return s;
}

std::string axis_sentence(const ValidatedChart& chart, Channel ch, const TemplateTable& templates) {
    const Encoding& enc = chart.encoding(ch);
    const Extent ext = axis_extent(chart, ch);
    TemplateVars vars{
        {"label", axis_sentence_label(enc)},
        {"orientation", ch == Channel::y ? "vertical" : "horizontal"},
        {"axis", ch == Channel::y ? "y" : "x"},
    };
    if (ext.binned) {
        vars["bins"] = join_comma(ext.categories);
        return templates.render("level1.axis_bins", vars);
    }
    if (ext.categorical) {
        vars["categories"] = join_comma(ext.categories);
        return templates.render("level1.axis_categories", vars);
    }
    if (ext.temporal) {
        const bool years = ext.max - ext.min >= 2.0;
        vars["min"] = temporal_text(ext.min, years);
        vars["max"] = temporal_text(ext.max, years);
    } else {
        vars["min"] = format_number(ext.min);
        vars["max"] = format_number(ext.max, unit_of(ext.unit));
    }
    return templates.render("level1.axis_range", vars);
}

}  // namespace

Description realize_level1(const ValidatedChart& chart, const TemplateTable& templates) {
    const ChartSpec& spec = chart.spec();
    Description d;
    d.chart_id = spec.id.value_or("");
    const auto add = [&](const std::string& text) { d.sentences.push_back({finish_sentence(text), 1, "spec"}); };

    const Encoding* measure = &spec.y();
    const Encoding* dimension = &spec.x();
    if (spec.mark == Mark::bar && spec.y().is_categorical() && !spec.x().is_categorical()) std::swap(measure, dimension);

    if (spec.title.empty()) {
        add(templates.render("level1.intro_untitled", {{"chart_type", chart_type_phrase(spec)}}));
    } else {
        add(templates.render("level1.intro", {{"chart_type", chart_type_phrase(spec)},
                                              {"title", spec.title},
                                              {"measure", intro_label(*measure)},
                                              {"dimension", intro_label(*dimension)}}));
    }
    add(axis_sentence(chart, Channel::y, templates));
    add(axis_sentence(chart, Channel::x, templates));

    if (const Encoding* color = spec.color()) {
        if (!color->color_range.empty()) {
            const Extent ext = axis_extent(chart, Channel::color);
            for (std::size_t i = 0; i < ext.categories.size() && i < color->color_range.size(); ++i)
                add(templates.render("level1.legend_color",
                                     {{"category", ext.categories[i]}, {"color", color->color_range[i]}}));
        } else {
            add(templates.render("level1.legend_field", {{"field", capitalize_first(color->label())}}));
        }
    }
    for (const auto& a : spec.annotations) add(a);
    return d;
}

// ---- Level 2 realization ----------------------------------------------------

namespace {

std::string measure_head(const std::string& measure) {
    const std::string m = lower_label(measure);
    const auto sp = m.find_last_of(' ');
    return sp == std::string::npos ? m : m.substr(sp + 1);
}

TemplateVars base_vars(const FactLabels& l) {
    return {
        {"measure", l.measure},
        {"measure_phrase", l.measure_phrase.empty() ? lower_label(l.measure) : l.measure_phrase},
        {"measure_head", measure_head(l.measure)},
        {"category", l.category},
        {"x_label", l.x_label},
        {"y_label", l.y_label},
        {"x_phrase", l.x_phrase},
    };
}

std::string strength_adverb(Strength s) {
    switch (s) {
        case Strength::strong: return "";
        case Strength::moderate: return "moderately ";
        case Strength::weak: return "weakly ";
    }
    return "";
}

}  // namespace

Sentence realize_fact(const Fact& fact, Style style, const TemplateTable& templates) {
    const FactLabels& l = fact.labels;
    const OptUnit unit = unit_of(l.unit);
    TemplateVars vars = base_vars(l);
    std::string kind(to_string(fact.kind));
    std::string variant = l.variant;
    std::string text;

    switch (fact.kind) {
        case FactKind::summary_stats: {
            const auto& s = std::get<SummaryStats>(fact.payload);
            vars["mean"] = format_number(s.mean, unit);
            vars["median"] = format_number(s.median, unit);
            vars["stdev"] = format_number(s.stdev, unit);
            vars["min"] = format_number(s.min, unit);
            vars["max"] = format_number(s.max, unit);
            vars["n"] = std::to_string(s.n);
            break;
        }
        case FactKind::extremum: {
            const auto& e = std::get<Extremum>(fact.payload);
            const bool series = variant == "series";
            vars["max_categories"] = series ? join_and(e.max_categories) : join_comma(e.max_categories);
            vars["min_categories"] = series ? join_and(e.min_categories) : join_comma(e.min_categories);
            vars["max_value"] = format_number(e.max_value, unit);
            vars["min_value"] = format_number(e.min_value, unit);
            vars["min_shared"] = e.min_categories.size() >= 2 && e.max_value != e.min_value
                                     ? templates.render("extremum.shared_suffix", vars)
                                     : "";
            break;
        }
        case FactKind::outliers: {
            const auto& o = std::get<Outliers>(fact.payload);
            std::vector<std::string> items;
            for (std::size_t i = 0; i < o.values.size(); ++i) {
                std::string item = format_number(o.values[i], unit);
                if (i < o.labels.size() && !o.labels[i].empty()) item += " (" + o.labels[i] + ")";
                items.push_back(std::move(item));
            }
            vars["values"] = join_and(items);
            vars["lower_fence"] = format_number(o.lower_fence, unit);
            vars["upper_fence"] = format_number(o.upper_fence, unit);
            break;
        }
        case FactKind::correlation: {
            const auto& c = std::get<Correlation>(fact.payload);
            vars["r"] = format_number(c.r);
            vars["strength"] = std::string(to_string(c.strength));
            vars["direction"] = std::string(to_string(c.direction));
            vars["strength_adverb"] = strength_adverb(c.strength);
            vars["direction_adverb"] = c.direction == Direction::positive ? "positively" : "negatively";
            if (c.strength == Strength::weak) variant = "weak";
            else variant = std::string(to_string(c.direction));
            break;
        }
        case FactKind::comparison: {
            const auto& c = std::get<Comparison>(fact.payload);
            vars["a"] = c.a_label;
            vars["b"] = c.b_label;
            vars["a_value"] = format_number(c.a, unit);
            vars["b_value"] = format_number(c.b, unit);
            vars["difference"] = format_number(std::fabs(c.difference), unit);
            vars["relative"] = format_number(std::fabs(c.relative_difference) * 100.0, "%");
            variant = std::string(to_string(c.relation));
            break;
        }
        case FactKind::shared_value: {
            const auto& s = std::get<SharedValue>(fact.payload);
            if (s.groups.empty()) {
                variant = "none";
                break;
            }
            // One sentence per fact; the pipeline splits multi-group facts.
            std::vector<std::string> parts;
            for (std::size_t i = 0; i < s.groups.size(); ++i) {
                TemplateVars v = vars;
                v["categories"] = join_and(s.groups[i]);
                v["value"] = format_number(s.values[i], unit);
                parts.push_back(finish_sentence(render_fallback(templates, kind, variant, style, v)));
            }
            text = join(parts, " ");
            break;
        }
        case FactKind::group_means: {
            const auto& g = std::get<GroupMeans>(fact.payload);
            vars["group"] = g.group;
            if (variant == "axes" && g.means.size() == 2) {
                vars["x_label"] = lower_label(g.means[0].first);
                vars["y_label"] = lower_label(g.means[1].first);
                vars["x_mean"] = format_number(g.means[0].second, unit);
                vars["y_mean"] = format_number(g.means[1].second, unit);
            } else {
                variant.clear();
                std::vector<std::string> items;
                for (const auto& [key, value] : g.means)
                    items.push_back(templates.render("group_means.item", {{"value", format_number(value, unit)},
                                                                          {"key", key}}));
                vars["means"] = join_and(items);
            }
            break;
        }
        default:
            throw Error("unknown-fact-kind", "no realization for fact kind " + std::to_string(static_cast<int>(fact.kind)));
    }

    if (text.empty()) text = finish_sentence(render_fallback(templates, kind, variant, style, vars));
    return {text, fact.level, source_of(kind, fact.provenance)};
}

// ---- Level 3 realization ----------------------------------------------------

namespace {

std::string position_text(double v, bool temporal) {
    return temporal ? temporal_text(v, true) : format_number(v);
}

}  // namespace

Sentence realize_fact(const TrendFact& fact, Style style, const TemplateTable& templates) {
    const FactLabels& l = fact.labels;
    TemplateVars vars = base_vars(l);
    std::string kind(to_string(fact.kind));
    std::string variant = l.variant;

    switch (fact.kind) {
        case TrendKind::direction:
        case TrendKind::fluctuation: {
            const auto& c = std::get<TrendClassification>(fact.payload);
            vars["slope"] = format_number(c.slope);
            vars["r2"] = format_number(c.r2);
            if (fact.kind == TrendKind::direction) {
                variant = std::string(to_string(c.direction));
                if (c.fluctuating && c.direction != TrendDirection::flat) variant += "_fluctuating";
            }
            break;
        }
        case TrendKind::exception_window: {
            const auto& w = std::get<ExceptionWindow>(fact.payload);
            const std::string a = position_text(w.start, l.temporal);
            const std::string b = position_text(w.end, l.temporal);
            const bool single = a == b;
            vars["range"] = single ? a : a + "-" + b;
            if (l.temporal) vars["range_noun"] = single ? "Year" : "Years";
            else vars["range_noun"] = capitalize_first(l.x_label);
            vars["count"] = std::to_string(w.series.size());
            vars["total"] = std::to_string(w.series_total);
            if (l.color_label.empty() || w.series_total <= 1) vars["of_who"] = "";
            else if (w.series.size() == w.series_total) vars["of_who"] = " of all given " + lower_label(l.color_label);
            else vars["of_who"] = " of " + vars["count"] + " of the " + vars["total"] + " " + lower_label(l.color_label);
            if (single) variant = "single";
            break;
        }
        case TrendKind::dispersion_compare: {
            const auto& d = std::get<DispersionComparison>(fact.payload);
            if (d.scores.size() < 2) throw Error("unknown-fact-kind", "dispersion comparison needs two groups");
            vars["most"] = d.scores.front().first;
            vars["most_score"] = format_number(d.scores.front().second);
            vars["least"] = d.scores.back().first;
            vars["least_score"] = format_number(d.scores.back().second);
            break;
        }
        case TrendKind::separation: {
            const auto& s = std::get<SeparationResult>(fact.payload);
            vars["a"] = s.a;
            vars["b"] = s.b;
            vars["score"] = std::isinf(s.score) ? "infinite" : format_number(s.score);
            variant = s.gap ? "gap" : "overlap";
            break;
        }
        case TrendKind::growth_shape: {
            const auto& g = std::get<GrowthShape>(fact.payload);
            vars["r2_linear"] = format_number(g.r2_linear);
            vars["r2_log"] = format_number(g.r2_log);
            variant = g.exponential ? "exponential" : "linear";
            break;
        }
        default:
            throw Error("unknown-fact-kind", "no realization for trend kind " + std::to_string(static_cast<int>(fact.kind)));
    }
    return {finish_sentence(render_fallback(templates, kind, variant, style, vars)), fact.level,
            source_of(kind, fact.provenance)};
}

// ---- Fact extraction ---------------------------------------------------------

namespace {

Column numeric_column(std::string name, const std::vector<double>& values) {
    Column c;
    c.name = std::move(name);
    c.ctype = ColumnType::quantitative;
    for (double v : values) {
        c.raw.push_back(format_number(v));
        c.missing.push_back(false);
        c.numeric.push_back(v);
    }
    return c;
}

std::string measure_phrase_for(const std::string& title, const std::string& measure) {
    const auto by = title.find(" by ");
    if (by != std::string::npos) {
        const std::string prefix = title.substr(0, by);
        const std::string lp = to_lower_ascii(prefix), lm = to_lower_ascii(measure);
        if (lp.size() >= lm.size() && lp.compare(lp.size() - lm.size(), lm.size(), lm) == 0) return prefix;
    }
    return lower_label(measure);
}

bool is_ordered_axis(const Encoding& e) {
    return e.bin.has_value() || e.type != ColumnType::nominal;
}

// Category labels in axis order with the mean value of each.
std::vector<LabeledValue> category_means(const ValidatedChart& chart, Channel cat, Channel val) {
    const auto cats = row_categories(chart, cat);
    const Column& v = chart.column(val);
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (std::size_t r = 0; r < v.size(); ++r) {
        if (!cats[r] || v.is_missing(r)) continue;
        auto& [sum, n] = acc[*cats[r]];
        sum += v.numeric[r];
        ++n;
    }
    std::vector<std::string> order;
    const Encoding& enc = chart.encoding(cat);
    if (enc.is_categorical()) {
        order = axis_extent(chart, cat).categories;
    } else {
        const Column& c = chart.column(cat);
        std::vector<std::pair<double, std::string>> keyed;
        for (const auto& [label, s] : acc) {
            for (std::size_t r = 0; r < c.size(); ++r)
                if (cats[r] && *cats[r] == label) {
                    keyed.push_back({c.numeric[r], label});
                    break;
                }
        }
        std::sort(keyed.begin(), keyed.end());
        for (auto& [k, label] : keyed) order.push_back(label);
    }
    std::vector<LabeledValue> out;
    for (const auto& label : order) {
        auto it = acc.find(label);
        if (it == acc.end()) continue;
        out.push_back({label, it->second.first / static_cast<double>(it->second.second)});
    }
    return out;
}

// Rows grouped by colour category (axis order), each sorted by x with
// duplicate x positions averaged.
std::vector<std::pair<std::string, Series>> color_series(const ValidatedChart& chart) {
    const Column& x = chart.column(Channel::x);
    const Column& y = chart.column(Channel::y);
    std::vector<std::optional<std::string>> groups(x.size(), std::string());
    std::vector<std::string> order{""};
    if (chart.has(Channel::color)) {
        groups = row_categories(chart, Channel::color);
        order = axis_extent(chart, Channel::color).categories;
    }
    std::map<std::string, std::map<double, std::pair<double, std::size_t>>> acc;
    for (std::size_t r = 0; r < x.size(); ++r) {
        if (!groups[r] || x.is_missing(r) || y.is_missing(r)) continue;
        auto& [sum, n] = acc[*groups[r]][x.numeric[r]];
        sum += y.numeric[r];
        ++n;
    }
    std::vector<std::pair<std::string, Series>> out;
    for (const auto& g : order) {
        auto it = acc.find(g);
        if (it == acc.end()) continue;
        Series s;
        for (const auto& [xv, agg] : it->second) s.push_back({xv, agg.first / static_cast<double>(agg.second)});
        out.push_back({g, std::move(s)});
    }
    return out;
}

std::string x_text(double v, const Encoding& enc, double span) {
    if (enc.type == ColumnType::temporal) return temporal_text(v, span >= 2.0);
    return format_number(v, unit_of(enc.unit));
}

template <class F>
void optional_fact(F&& f) {
    try {
        f();
    } catch (const Error&) {
        // precondition not met for this chart; the fact is simply absent
    }
}

class Extractor {
public:
    Extractor(const ValidatedChart& chart, const Thresholds& t) : chart_(chart), t_(t) {}

    FactSet run() {
        switch (chart_.spec().mark) {
            case Mark::bar: bar(); break;
            case Mark::line: line(); break;
            case Mark::point: scatter(); break;
        }
        dedupe();
        return std::move(out_);
    }

private:
    const ValidatedChart& chart_;
    const Thresholds& t_;
    FactSet out_;

    FactLabels labels_for(Channel cat, Channel val) const {
        const ChartSpec& spec = chart_.spec();
        const Encoding& ve = spec.encodings.at(val);
        const Encoding& ce = spec.encodings.at(cat);
        FactLabels l;
        l.measure = ve.label();
        l.measure_phrase = measure_phrase_for(spec.title, l.measure);
        l.category = ce.label();
        l.x_label = spec.x().label();
        l.y_label = spec.y().label();
        l.unit = ve.unit;
        l.temporal = ce.type == ColumnType::temporal && !ce.bin;
        l.x_phrase = l.temporal ? "over time" : "as " + lower_label(ce.label()) + " increases";
        if (const Encoding* c = spec.color()) l.color_label = c->label();
        return l;
    }

    void add(Fact f, const FactLabels& l) {
        f.labels = l;
        out_.facts.push_back(std::move(f));
    }
    void add(TrendFact f, const FactLabels& l) {
        f.labels = l;
        out_.trends.push_back(std::move(f));
    }

    std::vector<std::string> cols(std::initializer_list<Channel> chs) const {
        std::vector<std::string> c;
        for (Channel ch : chs)
            if (chart_.has(ch)) c.push_back(chart_.encoding(ch).field);
        return c;
    }

    // Extremum, shared values and outliers over a labelled series.
    void series_facts(const std::vector<LabeledValue>& series, FactLabels l, const std::vector<std::string>& columns) {
        if (series.empty()) return;
        Fact ext = find_extrema(series);
        ext.provenance.columns = columns;
        const auto ex = std::get<Extremum>(ext.payload);
        add(ext, l);

        if (series.size() >= 2) {
            const Fact sv = shared_value_groups(series, t_.shared_value_tolerance);
            const auto& payload = std::get<SharedValue>(sv.payload);
            for (std::size_t i = 0; i < payload.groups.size(); ++i) {
                const auto& g = payload.groups[i];
                // already said by the extremum sentence
                if (g == ex.min_categories || g == ex.max_categories) continue;
                Fact f{FactKind::shared_value, 2, SharedValue{{g}, {payload.values[i]}}, {columns, g}, {}};
                FactLabels sl = l;
                sl.variant.clear();
                add(f, sl);
            }
        }

        if (series.size() == 2) {
            Fact c = compare_points(series[0], series[1]);
            c.provenance.columns = columns;
            FactLabels cl = l;
            cl.variant.clear();
            add(c, cl);
        }

        optional_fact([&] {
            std::vector<double> values;
            for (const auto& [label, v] : series) values.push_back(v);
            Fact o = detect_outliers(numeric_column(l.measure, values));
            auto& p = std::get<Outliers>(o.payload);
            if (p.values.empty()) return;
            for (std::size_t r : p.rows) p.labels.push_back(series[r].first);
            o.provenance.columns = columns;
            o.provenance.groups = p.labels;
            FactLabels ol = l;
            ol.variant.clear();
            add(o, ol);
        });
    }

    // Direction of an ordered series, replaced by the growth shape when the
    // rise is exponential-like.
    void trend_facts(const Series& s, const FactLabels& l, const std::vector<std::string>& columns) {
        optional_fact([&] {
            TrendFact tr = classify_trend(s, t_);
            tr.provenance.columns = columns;
            const auto& c = std::get<TrendClassification>(tr.payload);
            const bool positive = std::all_of(s.begin(), s.end(), [](const Point& p) { return p.y > 0; });
            if (tr.kind == TrendKind::direction && c.direction == TrendDirection::increasing && !c.fluctuating &&
                positive && s.size() >= 4) {
                TrendFact g = growth_shape(s, t_);
                if (std::get<GrowthShape>(g.payload).exponential) {
                    g.provenance.columns = columns;
                    add(g, l);
                    return;
                }
            }
            add(tr, l);
        });
    }

    void bar() {
        const ChartSpec& spec = chart_.spec();
        Channel cat = Channel::x, val = Channel::y;
        if (spec.y().is_categorical() && !spec.x().is_categorical()) std::swap(cat, val);
        FactLabels l = labels_for(cat, val);
        const Encoding& ce = chart_.encoding(cat);
        if (ce.bin) l.variant = "bins";
        const auto columns = cols({cat, val});

        const auto series = category_means(chart_, cat, val);
        series_facts(series, l, columns);

        if (chart_.has(Channel::color)) color_group_means(cat, val, l);

        if (is_ordered_axis(ce) && series.size() >= 3) {
            Series s;
            const bool indexed = ce.is_categorical();
            const Column& cc = chart_.column(cat);
            const auto cats = row_categories(chart_, cat);
            for (std::size_t i = 0; i < series.size(); ++i) {
                double x = static_cast<double>(i);
                if (!indexed) {
                    for (std::size_t r = 0; r < cc.size(); ++r)
                        if (cats[r] && *cats[r] == series[i].first) {
                            x = cc.numeric[r];
                            break;
                        }
                }
                s.push_back({x, series[i].second});
            }
            FactLabels tl = l;
            tl.variant.clear();
            trend_facts(s, tl, columns);
        }
    }

    void color_group_means(Channel cat, Channel val, const FactLabels& l) {
        const auto cats = row_categories(chart_, cat);
        const auto colors = row_categories(chart_, Channel::color);
        const Column& v = chart_.column(val);
        std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> acc;
        for (std::size_t r = 0; r < v.size(); ++r) {
            if (!cats[r] || !colors[r] || v.is_missing(r)) continue;
            auto& [sum, n] = acc[{*cats[r], *colors[r]}];
            sum += v.numeric[r];
            ++n;
        }
        std::vector<std::string> cat_order;
        for (const auto& [label, value] : category_means(chart_, cat, val)) cat_order.push_back(label);
        const auto color_order = axis_extent(chart_, Channel::color).categories;
        for (const auto& c : cat_order) {
            std::vector<std::pair<std::string, double>> means;
            for (const auto& k : color_order) {
                auto it = acc.find({c, k});
                if (it != acc.end()) means.push_back({k, it->second.first / static_cast<double>(it->second.second)});
            }
            if (means.empty()) continue;
            Fact f = group_means(c, means);
            f.provenance.columns = cols({cat, Channel::color, val});
            FactLabels gl = l;
            gl.variant.clear();
            add(f, gl);
        }
    }

    void line() {
        FactLabels l = labels_for(Channel::x, Channel::y);
        const auto columns = cols({Channel::x, Channel::y, Channel::color});
        const auto groups = color_series(chart_);
        if (groups.empty()) return;
        const Encoding& xe = chart_.encoding(Channel::x);

        double lo = INFINITY, hi = -INFINITY;
        for (const auto& [g, s] : groups)
            for (const auto& p : s) {
                lo = std::min(lo, p.x);
                hi = std::max(hi, p.x);
            }
        const double span = hi - lo;

        if (!chart_.has(Channel::color)) {
            const Series& s = groups.front().second;
            std::vector<LabeledValue> series;
            for (const auto& p : s) series.push_back({x_text(p.x, xe, span), p.y});
            FactLabels el = l;
            el.category = xe.label();
            series_facts(series, el, columns);
            trend_facts(s, l, columns);
            optional_fact([&] {
                for (auto f : detect_exceptions({{l.measure, s}}, span * t_.exception_window_fraction, t_)) {
                    f.provenance.columns = columns;
                    add(f, l);
                }
            });
            return;
        }

        std::vector<LabeledValue> means;
        std::map<double, std::pair<double, std::size_t>> per_x;
        std::map<std::string, Series> multi;
        for (const auto& [g, s] : groups) {
            double sum = 0;
            for (const auto& p : s) {
                sum += p.y;
                auto& [ps, pn] = per_x[p.x];
                ps += p.y;
                ++pn;
            }
            means.push_back({g, sum / static_cast<double>(s.size())});
            multi[g] = s;
        }
        Fact ext = find_extrema(means);
        ext.provenance.columns = columns;
        FactLabels sl = l;
        sl.variant = "series";
        add(ext, sl);

        Series overall;
        for (const auto& [x, agg] : per_x) overall.push_back({x, agg.first / static_cast<double>(agg.second)});
        trend_facts(overall, l, columns);

        optional_fact([&] {
            for (auto f : detect_exceptions(multi, span * t_.exception_window_fraction, t_)) {
                f.provenance.columns = columns;
                add(f, l);
            }
        });
    }

    void scatter() {
        FactLabels l = labels_for(Channel::x, Channel::y);
        optional_fact([&] {
            Fact c = correlation(chart_.column(Channel::x), chart_.column(Channel::y), t_);
            c.provenance.columns = cols({Channel::x, Channel::y});
            add(c, l);
        });
        if (!chart_.has(Channel::color)) {
            optional_fact([&] {
                Fact o = detect_outliers(chart_.column(Channel::y));
                if (std::get<Outliers>(o.payload).values.empty()) return;
                o.provenance.columns = cols({Channel::y});
                add(o, l);
            });
            return;
        }

        const auto columns = cols({Channel::x, Channel::y, Channel::color});
        const auto groups = color_series_raw();
        for (const auto& [g, s] : groups) {
            if (s.empty()) continue;
            double sx = 0, sy = 0;
            for (const auto& p : s) {
                sx += p.x;
                sy += p.y;
            }
            const double n = static_cast<double>(s.size());
            Fact f = group_means(g, {{l.x_label, sx / n}, {l.y_label, sy / n}});
            f.provenance.columns = columns;
            FactLabels gl = l;
            gl.variant = "axes";
            add(f, gl);
        }

        std::map<std::string, Series> by_name;
        for (const auto& [g, s] : groups)
            if (s.size() >= 2) by_name[g] = s;
        if (by_name.size() >= 2) {
            optional_fact([&] {
                TrendFact d = dispersion_compare(by_name);
                d.provenance.columns = columns;
                add(d, l);
            });
        }
        if (groups.size() == 2 && groups[0].second.size() >= 2 && groups[1].second.size() >= 2) {
            optional_fact([&] {
                TrendFact s = separation(groups[0].first, groups[0].second, groups[1].first, groups[1].second, t_);
                s.provenance.columns = columns;
                add(s, l);
            });
        }
    }

    // Scatter groups keep every point (no averaging of shared x).
    std::vector<std::pair<std::string, Series>> color_series_raw() const {
        const Column& x = chart_.column(Channel::x);
        const Column& y = chart_.column(Channel::y);
        const auto groups = row_categories(chart_, Channel::color);
        std::vector<std::pair<std::string, Series>> out;
        for (const auto& g : axis_extent(chart_, Channel::color).categories) out.push_back({g, {}});
        for (std::size_t r = 0; r < x.size(); ++r) {
            if (!groups[r] || x.is_missing(r) || y.is_missing(r)) continue;
            for (auto& [name, s] : out)
                if (name == *groups[r]) s.push_back({x.numeric[r], y.numeric[r]});
        }
        return out;
    }

    void dedupe() {
        std::set<std::tuple<std::string, std::vector<std::string>, std::vector<std::string>>> seen;
        std::vector<Fact> facts;
        for (auto& f : out_.facts)
            if (seen.insert({std::string(to_string(f.kind)), f.provenance.columns, f.provenance.groups}).second)
                facts.push_back(std::move(f));
        out_.facts = std::move(facts);
        std::vector<TrendFact> trends;
        for (auto& f : out_.trends)
            if (seen.insert({std::string(to_string(f.kind)), f.provenance.columns, f.provenance.groups}).second)
                trends.push_back(std::move(f));
        out_.trends = std::move(trends);
    }
};

}  // namespace

FactSet extract_facts(const ValidatedChart& chart, const Thresholds& t) {
    return Extractor(chart, t).run();
}

Description compose_description(const ValidatedChart& chart, const ComposeOptions& options) {
    if (options.levels.empty()) throw Error("invalid-levels", "at least one level must be requested");
    for (int lv : options.levels)
        if (lv < 1 || lv > 3) throw Error("invalid-levels", "level " + std::to_string(lv) + " cannot be generated");
    const TemplateTable& templates = options.templates ? *options.templates : TemplateTable::defaults();

    Description d;
    d.chart_id = chart.spec().id.value_or("");
    if (options.levels.count(1)) d.sentences = realize_level1(chart, templates).sentences;
    if (!options.levels.count(2) && !options.levels.count(3)) return d;

    const FactSet facts = extract_facts(chart, options.thresholds);
    if (options.levels.count(2))
        for (const auto& f : facts.facts) d.sentences.push_back(realize_fact(f, options.style, templates));
    if (options.levels.count(3))
        for (const auto& f : facts.trends) d.sentences.push_back(realize_fact(f, options.style, templates));
    return d;
}

}  // namespace chartdesc
