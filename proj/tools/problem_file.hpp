#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "interlace/inverse.hpp"
#include "interlace/types.hpp"

namespace interlace::cli {

/// Parsed problem document. Exactly one of `mu` (inverse direction) or `v`
/// (forward direction; with `c` in bordered mode) is present.
struct ProblemFile {
  PerturbationMode mode = PerturbationMode::rank_one;
  Field field = Field::real;
  OrderedSpectrum lambda = OrderedSpectrum::strict({0.0});
  std::optional<OrderedSpectrum> mu;
  std::optional<FieldVector> v;
  std::optional<double> c;
  std::optional<ComplexMatrix> basis;
  TolerancePolicy tolerances;  // per-lambda defaults unless overridden
  ContinuationOptions continuation;

  bool forward_direction() const { return v.has_value(); }
};

/// Parse and validate a problem document. Schema violations surface as
/// Error{invalid_argument/length_mismatch/...}; the lambda entry is validated
/// as a strict spectrum (degenerate input is a schema-level rejection).
ProblemFile parse_problem(const nlohmann::ordered_json& doc);

ProblemFile load_problem(const std::string& path);

}  // namespace interlace::cli
