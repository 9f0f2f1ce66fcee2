#include "chartdesc/config.hpp"

#include "chartdesc/error.hpp"
#include "chartdesc/tabular.hpp"

#include "json.hpp"

#include <functional>
#include <map>

namespace chartdesc {

Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("syntax", std::string("invalid config: ") + e.what(), e.byte);
    }
    if (!doc.is_object()) throw Error("invalid-config", "config must be a JSON object");

    Config cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "templates") {
            if (!value.is_string()) throw Error("invalid-config", "'templates' must be a path string");
            std::filesystem::path p = value.get<std::string>();
            cfg.template_file = p.is_relative() ? base_dir / p : p;
        } else if (key == "thresholds") {
            if (!value.is_object()) throw Error("invalid-config", "'thresholds' must be an object");
            Thresholds& t = cfg.thresholds;
            const std::map<std::string, std::function<void(double)>> setters = {
                {"flat_slope", [&](double v) { t.flat_slope = v; }},
                {"fluctuation_r2", [&](double v) { t.fluctuation_r2 = v; }},
                {"fluctuation_sign_changes", [&](double v) { t.fluctuation_sign_changes = static_cast<int>(v); }},
                {"exception_quorum", [&](double v) { t.exception_quorum = v; }},
                {"exception_sigma", [&](double v) { t.exception_sigma = v; }},
                {"exception_window_fraction", [&](double v) { t.exception_window_fraction = v; }},
                {"gap_ratio", [&](double v) { t.gap_ratio = v; }},
                {"growth_margin", [&](double v) { t.growth_margin = v; }},
                {"strong_correlation", [&](double v) { t.strong_correlation = v; }},
                {"moderate_correlation", [&](double v) { t.moderate_correlation = v; }},
                {"shared_value_tolerance", [&](double v) { t.shared_value_tolerance = v; }},
            };
            for (const auto& [name, v] : value.items()) {
                auto it = setters.find(name);
                if (it == setters.end()) throw Error("invalid-config", "unknown threshold '" + name + "'");
                if (!v.is_number()) throw Error("invalid-config", "threshold '" + name + "' must be numeric");
                it->second(v.get<double>());
            }
        } else {
            throw Error("invalid-config", "unknown config key '" + key + "'");
        }
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    return parse_config(read_text_file(path, "config-not-found"), path.parent_path());
}

}  // namespace chartdesc
