#pragma once

#include "rmap/verifier.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rmap {

struct SamplingSpec {
    enum class Mode { Random, Explicit };

    Mode mode = Mode::Random;
    std::size_t count = 100;
    std::uint64_t seed = 42;
    std::optional<std::vector<Interval>> box;   // random mode; default: source domain shrunk by 10%
    std::vector<std::vector<double>> points;    // explicit mode

    bool operator==(const SamplingSpec&) const = default;
};

// Tolerances given in the manifest; unset fields fall back to the defaults
// of the derivative mode in effect.
struct ToleranceOverrides {
    std::optional<double> residual;
    std::optional<double> relative;
    std::optional<double> rank;
    std::optional<double> involutivity;

    Tolerances resolve(DerivativeMode mode) const;
    bool operator==(const ToleranceOverrides&) const = default;
};

/// A scenario as written in a JSON manifest: two charts, the map, optional
/// normal fields for the shape operator, sampling, check selection and the
/// expected outcome per check.
struct ScenarioManifest {
    std::string name;
    std::string description;
    std::string literature_note;
    ChartSpec source;
    ChartSpec target;
    std::vector<std::string> map;
    std::vector<std::vector<std::string>> normal_fields;
    SamplingSpec sampling;
    std::vector<std::string> checks;  // empty: all
    ToleranceOverrides tolerances;
    DerivativeMode mode = DerivativeMode::Jets;
    bool hypothesis_gating = true;
    std::map<std::string, Outcome> expectations;

    bool operator==(const ScenarioManifest&) const = default;
};

// Parses and validates manifest JSON. Malformed JSON throws ParseError
// (offset into the text); every validation problem is collected into one
// ManifestError.
ScenarioManifest parse_manifest(std::string_view json_text);

// Reads a manifest file. A missing file throws Error("file not found: ...").
ScenarioManifest load_manifest(const std::filesystem::path& path);

std::string serialize_manifest(const ScenarioManifest& manifest);

// Sampled source points: explicit list, or the seeded draw from the box.
std::vector<Vector> manifest_points(const ScenarioManifest& manifest);

// Builds the executable scenario (charts, map, fields, points, expectations).
Scenario build_scenario(const ScenarioManifest& manifest);

SuiteOptions suite_options(const ScenarioManifest& manifest);

}  // namespace rmap
