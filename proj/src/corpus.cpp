#include "chartdesc/corpus.hpp"

#include "chartdesc/error.hpp"
#include "chartdesc/tabular.hpp"
#include "chartdesc/text.hpp"

#include "json.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

namespace chartdesc {

using ojson = nlohmann::ordered_json;

std::string_view to_string(ChartType v) {
    switch (v) {
        case ChartType::bar: return "bar";
        case ChartType::line: return "line";
        case ChartType::scatter: return "scatter";
    }
    return "bar";
}

std::string_view to_string(Topic v) {
    switch (v) {
        case Topic::academic: return "academic";
        case Topic::business: return "business";
        case Topic::journalism: return "journalism";
    }
    return "academic";
}

std::string_view to_string(Difficulty v) {
    switch (v) {
        case Difficulty::easy: return "easy";
        case Difficulty::medium: return "medium";
        case Difficulty::hard: return "hard";
    }
    return "easy";
}

std::string_view to_string(Facet v) {
    switch (v) {
        case Facet::chart_type: return "chart_type";
        case Facet::topic: return "topic";
        case Facet::difficulty: return "difficulty";
    }
    return "chart_type";
}

std::optional<Facet> facet_from_string(std::string_view s) {
    if (s == "chart_type" || s == "type") return Facet::chart_type;
    if (s == "topic") return Facet::topic;
    if (s == "difficulty") return Facet::difficulty;
    return std::nullopt;
}

std::size_t Corpus::description_count() const {
    std::set<std::pair<std::string, std::string>> d;
    for (const auto& s : sentences) d.insert({s.chart_id, s.participant_id});
    return d.size();
}

std::size_t Corpus::chart_count() const {
    std::set<std::string> c;
    for (const auto& s : sentences) c.insert(s.chart_id);
    return c.size();
}

// ---- adapter ------------------------------------------------------------------

namespace {

const std::vector<std::pair<const char*, std::vector<const char*>>> kAliases{
    {"chart_id", {"chart_id", "chart", "chartId", "visualization_id", "vis_id"}},
    {"chart_type", {"chart_type", "chartType", "type", "vis_type"}},
    {"topic", {"topic", "category"}},
    {"difficulty", {"difficulty", "complexity"}},
    {"participant_id", {"participant_id", "participant", "participantId", "worker_id", "pid", "description_id"}},
    {"sentence_index", {"sentence_index", "sentence_num", "sentenceIndex", "index", "position"}},
    {"text", {"text", "sentence", "content"}},
    {"level", {"level", "label", "semantic_level"}},
};

const ojson* lookup(const ojson& obj, const char* field, std::size_t line) {
    for (const auto& [canonical, aliases] : kAliases) {
        if (std::string_view(canonical) != field) continue;
        const ojson* found = nullptr;
        for (const char* a : aliases) {
            auto it = obj.find(a);
            if (it == obj.end()) continue;
            if (found) throw Error("syntax", std::string("record gives '") + field + "' twice under different names", line);
            found = &*it;
        }
        return found;
    }
    return nullptr;
}

std::string scalar_text(const ojson& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return std::to_string(v.get<long long>());
    return v.dump();
}

const ojson& require(const ojson& obj, const char* field, std::size_t line) {
    const ojson* v = lookup(obj, field, line);
    if (!v || v->is_null()) throw Error("missing-field", std::string("record has no '") + field + "'", line);
    return *v;
}

int parse_level(const ojson& v, std::size_t line) {
    if (v.is_number_integer() || v.is_number_unsigned()) {
        const auto n = v.get<long long>();
        if (n < 1 || n > 4) throw Error("invalid-level", "level must be 1-4, got " + std::to_string(n), line);
        return static_cast<int>(n);
    }
    if (v.is_string()) {
        std::string s = to_lower_ascii(normalize_whitespace(v.get<std::string>()));
        for (const char* prefix : {"level_", "level ", "level", "l"})
            if (s.rfind(prefix, 0) == 0) {
                s.erase(0, std::string_view(prefix).size());
                break;
            }
        if (s.size() == 1 && s[0] >= '1' && s[0] <= '4') return s[0] - '0';
        throw Error("invalid-level", "level must be 1-4, got '" + v.get<std::string>() + "'", line);
    }
    throw Error("invalid-level", "level must be 1-4, got " + v.dump(), line);
}

template <class E>
E parse_enum(const ojson& v, const char* field, std::initializer_list<std::pair<const char*, E>> table, std::size_t line) {
    const std::string s = to_lower_ascii(normalize_whitespace(scalar_text(v)));
    for (const auto& [name, value] : table)
        if (s == name) return value;
    throw Error("unknown-enum", std::string("unknown ") + field + " '" + scalar_text(v) + "'", line);
}

CorpusSentence record_from_json(const ojson& obj, std::size_t line) {
    if (!obj.is_object()) throw Error("syntax", "corpus record must be an object", line);
    CorpusSentence s;
    s.chart_id = scalar_text(require(obj, "chart_id", line));
    s.chart_type = parse_enum<ChartType>(require(obj, "chart_type", line), "chart_type",
                                         {{"bar", ChartType::bar},
                                          {"line", ChartType::line},
                                          {"scatter", ChartType::scatter},
                                          {"scatterplot", ChartType::scatter},
                                          {"scatter plot", ChartType::scatter},
                                          {"point", ChartType::scatter}},
                                         line);
    s.topic = parse_enum<Topic>(require(obj, "topic", line), "topic",
                                {{"academic", Topic::academic}, {"business", Topic::business}, {"journalism", Topic::journalism}},
                                line);
    s.difficulty = parse_enum<Difficulty>(require(obj, "difficulty", line), "difficulty",
                                          {{"easy", Difficulty::easy}, {"medium", Difficulty::medium}, {"hard", Difficulty::hard}},
                                          line);
    s.participant_id = scalar_text(require(obj, "participant_id", line));
    const ojson& idx = require(obj, "sentence_index", line);
    if (idx.is_number_unsigned() || (idx.is_number_integer() && idx.get<long long>() >= 0)) {
        s.sentence_index = idx.get<std::size_t>();
    } else if (idx.is_string()) {
        const auto n = parse_number(idx.get<std::string>());
        if (!n || *n < 0 || *n != static_cast<double>(static_cast<std::size_t>(*n)))
            throw Error("syntax", "sentence_index must be a non-negative integer", line);
        s.sentence_index = static_cast<std::size_t>(*n);
    } else {
        throw Error("syntax", "sentence_index must be a non-negative integer", line);
    }
    const ojson& text = require(obj, "text", line);
    if (!text.is_string()) throw Error("syntax", "text must be a string", line);
    s.text = text.get<std::string>();
    s.level = parse_level(require(obj, "level", line), line);
    return s;
}

class CorpusBuilder {
public:
    void add(CorpusSentence s, std::size_t line) {
        const auto key = std::make_tuple(s.chart_id, s.participant_id, s.sentence_index);
        if (!keys_.insert(key).second)
            throw Error("duplicate-record", "sentence " + std::to_string(s.sentence_index) + " of participant '" +
                                                s.participant_id + "' on chart '" + s.chart_id + "' appears twice",
                        line);
        const auto meta = std::make_tuple(s.chart_type, s.topic, s.difficulty);
        auto [it, inserted] = charts_.try_emplace(s.chart_id, meta);
        if (!inserted && it->second != meta)
            throw Error("inconsistent-chart", "chart '" + s.chart_id + "' has conflicting type/topic/difficulty", line);
        corpus_.sentences.push_back(std::move(s));
    }
    Corpus take() { return std::move(corpus_); }

private:
    Corpus corpus_;
    std::set<std::tuple<std::string, std::string, std::size_t>> keys_;
    std::map<std::string, std::tuple<ChartType, Topic, Difficulty>> charts_;
};

}  // namespace

Corpus parse_corpus_jsonl(std::string_view text) {
    CorpusBuilder b;
    std::size_t pos = 0, line = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line;
        if (normalize_whitespace(raw).empty()) continue;
        ojson obj;
        try {
            obj = ojson::parse(raw);
        } catch (const ojson::parse_error& e) {
            throw Error("syntax", std::string("invalid JSON: ") + e.what(), line);
        }
        b.add(record_from_json(obj, line), line);
    }
    return b.take();
}

Corpus parse_corpus_csv(std::string_view text) {
    const auto records = parse_csv(text);
    CorpusBuilder b;
    if (records.empty()) return b.take();
    const auto& header = records.front();
    for (std::size_t r = 1; r < records.size(); ++r) {
        ojson obj = ojson::object();
        for (std::size_t c = 0; c < header.size(); ++c) obj[header[c]] = records[r][c];
        b.add(record_from_json(obj, r + 1), r + 1);
    }
    return b.take();
}

Corpus load_corpus(const std::filesystem::path& path) {
    const std::string text = read_text_file(path, "corpus-not-found");
    if (to_lower_ascii(path.extension().string()) == ".csv") return parse_corpus_csv(text);
    return parse_corpus_jsonl(text);
}

std::string export_jsonl(const Corpus& corpus) {
    std::string out;
    for (const auto& s : corpus.sentences) {
        ojson o;
        o["chart_id"] = s.chart_id;
        o["chart_type"] = std::string(to_string(s.chart_type));
        o["topic"] = std::string(to_string(s.topic));
        o["difficulty"] = std::string(to_string(s.difficulty));
        o["participant_id"] = s.participant_id;
        o["sentence_index"] = s.sentence_index;
        o["text"] = s.text;
        o["level"] = s.level;
        out += o.dump();
        out.push_back('\n');
    }
    return out;
}

namespace {

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string export_csv(const Corpus& corpus) {
    std::ostringstream os;
    os << "chart_id,chart_type,topic,difficulty,participant_id,sentence_index,level,text\n";
    for (const auto& s : corpus.sentences) {
        os << csv_field(s.chart_id) << ',' << to_string(s.chart_type) << ',' << to_string(s.topic) << ','
           << to_string(s.difficulty) << ',' << csv_field(s.participant_id) << ',' << s.sentence_index << ','
           << s.level << ',' << csv_field(s.text) << '\n';
    }
    return os.str();
}

// ---- analytics ----------------------------------------------------------------

namespace {

std::string facet_value(const CorpusSentence& s, Facet f) {
    switch (f) {
        case Facet::chart_type: return std::string(to_string(s.chart_type));
        case Facet::topic: return std::string(to_string(s.topic));
        case Facet::difficulty: return std::string(to_string(s.difficulty));
    }
    return {};
}

std::vector<std::string> facet_values(Facet f) {
    switch (f) {
        case Facet::chart_type: return {"bar", "line", "scatter"};
        case Facet::topic: return {"academic", "business", "journalism"};
        case Facet::difficulty: return {"easy", "medium", "hard"};
    }
    return {};
}

}  // namespace

std::vector<LevelDistribution> level_distribution(const Corpus& corpus, std::optional<Facet> facet) {
    if (corpus.sentences.empty()) throw Error("empty-corpus", "level distribution of an empty corpus");
    const std::vector<std::string> values = facet ? facet_values(*facet) : std::vector<std::string>{"all"};
    std::vector<LevelDistribution> out;
    for (const auto& v : values) {
        LevelDistribution d;
        d.facet_value = v;
        for (const auto& s : corpus.sentences) {
            if (facet && facet_value(s, *facet) != v) continue;
            ++d.counts[static_cast<std::size_t>(s.level - 1)];
            ++d.total;
        }
        if (d.total == 0) continue;
        for (std::size_t l = 0; l < 4; ++l)
            d.proportions[l] = static_cast<double>(d.counts[l]) / static_cast<double>(d.total);
        out.push_back(d);
    }
    return out;
}

std::vector<Fingerprint> fingerprint(const Corpus& corpus, std::string_view chart_id) {
    std::map<std::string, std::vector<std::pair<std::size_t, int>>> by_participant;
    for (const auto& s : corpus.sentences)
        if (s.chart_id == chart_id) by_participant[s.participant_id].push_back({s.sentence_index, s.level});
    if (by_participant.empty()) throw Error("unknown-chart", "no descriptions for chart '" + std::string(chart_id) + "'");
    std::vector<Fingerprint> out;
    for (auto& [pid, items] : by_participant) {
        std::sort(items.begin(), items.end());
        Fingerprint f;
        f.participant_id = pid;
        for (const auto& [idx, level] : items) f.levels.push_back(level);
        out.push_back(std::move(f));
    }
    return out;
}

CurationBreakdown curation_breakdown(const Corpus& corpus) {
    std::map<std::string, const CorpusSentence*> charts;
    for (const auto& s : corpus.sentences) charts.try_emplace(s.chart_id, &s);
    CurationBreakdown b;
    b.charts = charts.size();
    const auto tally = [&](Facet f) {
        std::vector<std::pair<std::string, std::size_t>> counts;
        for (const auto& v : facet_values(f)) {
            std::size_t n = 0;
            for (const auto& [id, s] : charts)
                if (facet_value(*s, f) == v) ++n;
            counts.push_back({v, n});
        }
        return counts;
    };
    b.chart_type = tally(Facet::chart_type);
    b.topic = tally(Facet::topic);
    b.difficulty = tally(Facet::difficulty);
    return b;
}

}  // namespace chartdesc
