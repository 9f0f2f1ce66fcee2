#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace chartdesc {

/// Base error for every input problem the library reports. `kind` is a short
/// stable identifier ("syntax", "missing-column", ...) used by the CLI's
/// machine-readable error object.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message, std::optional<std::size_t> line = std::nullopt)
        : std::runtime_error(message), kind_(std::move(kind)), line_(line) {}

    const std::string& kind() const noexcept { return kind_; }
    /// 1-based line (or byte position for syntax errors) when known.
    std::optional<std::size_t> line() const noexcept { return line_; }

private:
    std::string kind_;
    std::optional<std::size_t> line_;
};

}  // namespace chartdesc
