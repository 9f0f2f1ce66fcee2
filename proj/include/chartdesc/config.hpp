#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace chartdesc {

/// Tunable constants behind the Level 2 wording and the Level 3 heuristics.
struct Thresholds {
    // classify_trend
    double flat_slope = 0.1;             // |normalized slope| below this is flat
    double fluctuation_r2 = 0.5;         // R^2 below this is fluctuating
    int fluctuation_sign_changes = 3;    // residual sign changes at or above this is fluctuating
    // detect_exceptions
    double exception_quorum = 0.8;
    double exception_sigma = 2.0;
    double exception_window_fraction = 0.2;  // default window as a share of the x span
    // separation
    double gap_ratio = 1.0;
    // growth_shape
    double growth_margin = 0.05;
    // correlation strength bands on |r|
    double strong_correlation = 0.7;
    double moderate_correlation = 0.4;
    // shared_value_groups
    double shared_value_tolerance = 1e-9;
};

struct Config {
    Thresholds thresholds;
    std::optional<std::filesystem::path> template_file;
};

/// JSON config: {"templates": "<path>", "thresholds": {"flat_slope": 0.1, ...}}.
/// Relative template paths resolve against the config file's directory.
/// Unknown keys are rejected.
Config load_config(const std::filesystem::path& path);
Config parse_config(std::string_view json_text, const std::filesystem::path& base_dir = {});

}  // namespace chartdesc
