#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "interlace/types.hpp"

namespace interlace {

/// Signs applied to the orthant solution; 0 marks face-contact coordinates.
struct SignPattern {
  std::vector<int> signs;
};

/// Per-coordinate phase angles; std::nullopt marks a frozen (zero) coordinate.
struct PhaseAssignment {
  std::vector<std::optional<double>> thetas;
};

/// Full real preimage set of mu: the orthant solution with every sign pattern
/// applied to its nonzero coordinates, lexicographic with +1 before -1.
struct RealPreimages {
  OrthantVector magnitude = OrthantVector::coords({0.0});  // the orthant solution
  std::optional<double> c;                                 // bordered mode
  std::size_t k = 0;                                       // face contacts
  std::vector<SignPattern> patterns;
  std::vector<FieldVector> vectors;  // 2^(n-k) entries
};

RealPreimages enumerate_real_preimages(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                       PerturbationMode mode,
                                       std::optional<TolerancePolicy> tol = std::nullopt);

/// One point of the phase torus: v_j = exp(i theta_j) p_j on nonzero
/// coordinates. Throws FrozenMismatch if a phase is supplied at a zero
/// coordinate.
FieldVector sample_complex_preimage(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                                    const PhaseAssignment& phases, PerturbationMode mode,
                                    std::optional<TolerancePolicy> tol = std::nullopt);

/// Preimage cardinality data for a target mu with k face contacts.
struct PreimageCount {
  Field field = Field::real;
  std::size_t k = 0;
  std::uint64_t real_count = 0;   // 2^(n-k), real field
  std::size_t torus_dimension = 0;  // n-k, complex field
  double r_squared = 0.0;         // common sphere radius squared
};

PreimageCount preimage_count(const OrderedSpectrum& lambda, const OrderedSpectrum& mu,
                             Field field, PerturbationMode mode,
                             std::optional<TolerancePolicy> tol = std::nullopt);

}  // namespace interlace
