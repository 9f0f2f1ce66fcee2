#include "chartdesc/templates.hpp"

#include "chartdesc/error.hpp"
#include "chartdesc/tabular.hpp"
#include "chartdesc/text.hpp"

#include "default_templates.inc"

namespace chartdesc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::string apply_filter(const std::string& value, std::string_view filter, std::string_view name) {
    if (filter.empty()) return value;
    if (filter == "lower") return lower_label(value);
    if (filter == "cap") return capitalize_first(value);
    throw Error("template-placeholder", "unknown filter '" + std::string(filter) + "' on {" + std::string(name) + "}");
}

}  // namespace

TemplateTable TemplateTable::parse(std::string_view text) {
    TemplateTable table;
    std::string current_key;
    std::string body;
    std::size_t line_no = 0;

    const auto finish = [&] {
        if (current_key.empty()) return;
        if (body.empty()) throw Error("template-syntax", "template [" + current_key + "] is empty", line_no);
        table.entries_[current_key] = body;
        body.clear();
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw_line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto line = trim(raw_line);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            finish();
            current_key = std::string(trim(line.substr(1, line.size() - 2)));
            if (current_key.empty()) throw Error("template-syntax", "empty template key", line_no);
            if (table.entries_.count(current_key))
                throw Error("duplicate-template", "template [" + current_key + "] defined twice", line_no);
            continue;
        }
        if (current_key.empty()) throw Error("template-syntax", "template text before the first [key]", line_no);
        if (!body.empty()) body.push_back(' ');
        body.append(line);
    }
    finish();
    return table;
}

TemplateTable TemplateTable::load(const std::filesystem::path& path) {
    return parse(read_text_file(path, "template-not-found"));
}

const TemplateTable& TemplateTable::defaults() {
    static const TemplateTable table = parse(kDefaultTemplates);
    return table;
}

const std::string& TemplateTable::raw(std::string_view key) const {
    auto it = entries_.find(key);
    if (it == entries_.end()) throw Error("unknown-template", "no template named [" + std::string(key) + "]");
    return it->second;
}

std::vector<std::string> TemplateTable::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries_) out.push_back(k);
    return out;
}

std::string TemplateTable::render(std::string_view key, const TemplateVars& vars) const {
    try {
        return render_template(raw(key), vars);
    } catch (const Error& e) {
        if (e.kind() != "template-placeholder") throw;
        throw Error(e.kind(), std::string(e.what()) + " in template [" + std::string(key) + "]");
    }
}

std::string render_template(std::string_view tmpl, const TemplateVars& vars) {
    std::string out;
    out.reserve(tmpl.size() + 32);
    for (std::size_t i = 0; i < tmpl.size(); ++i) {
        const char c = tmpl[i];
        if (c == '{' && i + 1 < tmpl.size() && tmpl[i + 1] == '{') {
            out.push_back('{');
            ++i;
        } else if (c == '}' && i + 1 < tmpl.size() && tmpl[i + 1] == '}') {
            out.push_back('}');
            ++i;
        } else if (c == '{') {
            const auto close = tmpl.find('}', i);
            if (close == std::string_view::npos) throw Error("template-placeholder", "unterminated placeholder");
            const auto inner = tmpl.substr(i + 1, close - i - 1);
            const auto bar = inner.find('|');
            const auto name = trim(inner.substr(0, bar));
            const auto filter = bar == std::string_view::npos ? std::string_view{} : trim(inner.substr(bar + 1));
            auto it = vars.find(name);
            if (it == vars.end()) throw Error("template-placeholder", "no value for {" + std::string(name) + "}");
            out += apply_filter(it->second, filter, name);
            i = close;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace chartdesc
