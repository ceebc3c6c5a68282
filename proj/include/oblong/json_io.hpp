#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace oblong {

/// Doubles formatted with 17 significant digits (%.17g): enough to
/// round-trip any double, and byte-stable across runs and platforms.
std::string fmt_g17(double x);

/// Serializes with insertion key order, 17-significant-digit floats,
/// `indent`-space indentation, and LF line endings. Non-finite numbers
/// become null (JSON has no representation for them).
std::string dump_json17(const nlohmann::ordered_json& j, int indent = 2);

}  // namespace oblong
