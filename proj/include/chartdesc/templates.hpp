#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace chartdesc {

using TemplateVars = std::map<std::string, std::string, std::less<>>;

/// Sentence templates keyed by name, read from the plain-text block format
/// in data/templates.txt. Read-only once loaded.
class TemplateTable {
public:
    TemplateTable() = default;

    /// Errors: "template-syntax" (with line), "duplicate-template".
    static TemplateTable parse(std::string_view text);
    static TemplateTable load(const std::filesystem::path& path);
    /// The table compiled in from data/templates.txt.
    static const TemplateTable& defaults();

    bool contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }
    const std::string& raw(std::string_view key) const;
    std::vector<std::string> keys() const;

    /// Substitutes {name} and {name|filter}. Errors: "unknown-template",
    /// "template-placeholder" for a placeholder with no value.
    std::string render(std::string_view key, const TemplateVars& vars) const;

    bool operator==(const TemplateTable&) const = default;

private:
    std::map<std::string, std::string, std::less<>> entries_;
};

/// Renders one template string; exposed for tests.
std::string render_template(std::string_view tmpl, const TemplateVars& vars);

}  // namespace chartdesc
