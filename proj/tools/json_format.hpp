#pragma once

#include <string>

#include <json.hpp>

namespace interlace::cli {

/// Deterministic serialization of an output document: insertion-ordered keys,
/// 17-significant-digit decimals, two-space indentation, trailing newline.
/// Identical documents produce identical bytes. Non-finite numbers are
/// rejected (the file format has no NaN/Inf).
std::string dump_deterministic(const nlohmann::ordered_json& doc);

/// Format one double the way dump_deterministic does.
std::string format_number(double x);

}  // namespace interlace::cli
