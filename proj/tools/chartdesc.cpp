// chartdesc: level-tagged chart descriptions, corpus analytics and ranking statistics.

#include "chartdesc/chart_spec.hpp"
#include "chartdesc/config.hpp"
#include "chartdesc/corpus.hpp"
#include "chartdesc/error.hpp"
#include "chartdesc/output.hpp"
#include "chartdesc/rankstats.hpp"
#include "chartdesc/realize.hpp"
#include "chartdesc/templates.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>

namespace fs = std::filesystem;
using namespace chartdesc;

namespace {

struct DescribeArgs {
    std::string spec;
    std::string data;
    std::string levels = "1,2,3";
    std::string style = "templatized";
    std::string format = "text";
    std::string config;
    std::string templates;
};

struct CorpusArgs {
    std::string path;
    std::string facet;
    std::string chart;
    std::string format = "text";
    std::string to = "csv";
};

struct EvalArgs {
    std::string rankings;
    double alpha = 0.05;
    std::string format = "text";
};

OutputFormat require_format(const std::string& s) {
    auto f = output_format_from_string(s);
    if (!f) throw Error("invalid-argument", "unknown format '" + s + "'");
    return *f;
}

int run_describe(const DescribeArgs& a) {
    Config config;
    if (!a.config.empty()) config = load_config(a.config);
    if (!a.templates.empty()) config.template_file = fs::path(a.templates);

    const auto style = style_from_string(a.style);
    if (!style) throw Error("invalid-argument", "style must be templatized or natural");
    const auto format = require_format(a.format);
    const auto levels = parse_levels(a.levels);

    ChartSpec spec = load_spec(a.spec);
    if (!spec.id) spec.id = fs::path(a.spec).stem().string();
    Dataset data;
    if (!a.data.empty()) data = load_table(a.data);
    else data = load_spec_data(spec, fs::path(a.spec).parent_path());
    const ValidatedChart chart = validate_spec(spec, data);

    std::optional<TemplateTable> custom;
    if (config.template_file) custom = TemplateTable::load(*config.template_file);

    ComposeOptions options;
    options.levels = levels;
    options.style = *style;
    options.thresholds = config.thresholds;
    options.templates = custom ? &*custom : nullptr;
    const Description d = compose_description(chart, options);

    std::optional<FactSet> facts;
    if (format == OutputFormat::json && (levels.count(2) || levels.count(3))) {
        facts = extract_facts(chart, config.thresholds);
        if (!levels.count(2)) facts->facts.clear();
        if (!levels.count(3)) facts->trends.clear();
    }
    std::cout << render_description(d, format, levels, *style, facts ? &*facts : nullptr).body;
    return 0;
}

int run_corpus(const std::string& sub, const CorpusArgs& a) {
    if (a.path.empty()) throw Error("invalid-argument", "a corpus file is required (--corpus or positional)");
    const auto format = require_format(a.format);
    const Corpus corpus = load_corpus(a.path);
    if (sub == "stats") {
        std::optional<Facet> facet;
        if (!a.facet.empty()) {
            facet = facet_from_string(a.facet);
            if (!facet) throw Error("invalid-argument", "facet must be chart_type, topic or difficulty");
        }
        std::cout << render_corpus_stats(corpus, facet, format);
    } else if (sub == "fingerprint") {
        if (a.chart.empty()) throw Error("invalid-argument", "--chart is required");
        std::cout << render_fingerprint(corpus, a.chart, format);
    } else if (sub == "breakdown") {
        std::cout << render_breakdown(corpus, format);
    } else if (sub == "export") {
        if (a.to == "csv") std::cout << export_csv(corpus);
        else if (a.to == "jsonl") std::cout << export_jsonl(corpus);
        else throw Error("invalid-argument", "--to must be csv or jsonl");
    }
    return 0;
}

int run_eval(const EvalArgs& a) {
    const auto format = require_format(a.format);
    const auto responses = load_rankings(a.rankings);
    std::cout << render_evaluation(evaluate_rankings(responses, a.alpha), format);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level-tagged chart descriptions, corpus analytics and ranking statistics"};
    app.require_subcommand(1);

    DescribeArgs describe;
    auto* d = app.add_subcommand("describe", "Describe a chart from its specification and data");
    d->add_option("--spec", describe.spec, "Chart specification (JSON)")->required();
    d->add_option("--data", describe.data, "Data file overriding the spec's data");
    d->add_option("--levels", describe.levels, "Comma-separated levels from 1,2,3")->capture_default_str();
    d->add_option("--style", describe.style, "templatized or natural")->capture_default_str();
    d->add_option("--format", describe.format, "text, json or html")->capture_default_str();
    d->add_option("--config", describe.config, "Configuration file (JSON)");
    d->add_option("--templates", describe.templates, "Template file overriding the built-in table");

    CorpusArgs corpus;
    auto* c = app.add_subcommand("corpus", "Corpus statistics");
    c->require_subcommand(1);
    std::string corpus_sub;
    for (const char* name : {"stats", "fingerprint", "breakdown", "export"}) {
        auto* s = c->add_subcommand(name);
        s->add_option("file", corpus.path, "Corpus file (JSONL or CSV)");
        s->add_option("--corpus", corpus.path, "Corpus file (JSONL or CSV)");
        s->add_option("--format", corpus.format, "text or json (svg for fingerprint)")->capture_default_str();
        s->callback([&corpus_sub, name] { corpus_sub = name; });
    }
    c->get_subcommand("stats")->description("Level distribution")->add_option("--facet", corpus.facet,
                                                                              "chart_type, topic or difficulty");
    c->get_subcommand("fingerprint")->description("Per-description level sequences")->add_option("--chart", corpus.chart,
                                                                                                  "Chart id");
    c->get_subcommand("breakdown")->description("Charts by type, topic and difficulty");
    c->get_subcommand("export")->description("Re-export the corpus")->add_option("--to", corpus.to, "csv or jsonl");

    EvalArgs eval;
    auto* e = app.add_subcommand("eval", "Ranking-task statistics");
    e->add_option("--rankings", eval.rankings, "Rankings CSV")->required();
    e->add_option("--alpha", eval.alpha, "Significance level")->capture_default_str();
    e->add_option("--format", eval.format, "text or json")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);
        std::cerr << error_json("usage", err.what()) << "\n";
        return 1;
    }

    try {
        int rc = 2;
        if (d->parsed()) rc = run_describe(describe);
        else if (c->parsed()) rc = run_corpus(corpus_sub, corpus);
        else if (e->parsed()) rc = run_eval(eval);
        std::cout.flush();
        if (!std::cout) throw std::runtime_error("failed to write output");
        return rc;
    } catch (const Error& err) {
        std::cerr << error_json(err.kind(), err.what(), err.line()) << "\n";
        return 1;
    } catch (const std::exception& err) {
        std::cerr << error_json("internal", err.what()) << "\n";
        return 2;
    }
}
