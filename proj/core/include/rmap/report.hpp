#pragma once

#include "rmap/verifier.hpp"

#include <string>

namespace rmap {

// Machine-readable report. Bytes depend only on the report contents;
// generated_at is written only when set.
std::string report_json(const CheckReport& report);

// Human-readable table: one row per check plus a verdict line.
std::string summary_table(const CheckReport& report);

}  // namespace rmap
