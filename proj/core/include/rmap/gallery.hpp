#pragma once

#include "rmap/manifest.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rmap {

struct GalleryEntry {
    std::string name;
    std::string description;
    std::string literature_note;
    std::map<std::string, Outcome> expectations;  // checks not listed: pass or skip
};

// Built-in scenarios in listing order.
const std::vector<std::string>& gallery_names();
std::vector<GalleryEntry> gallery();

// Throws Error naming the available scenarios when `name` is unknown.
ScenarioManifest builtin_scenario(std::string_view name);

}  // namespace rmap
