#pragma once

#include <stdexcept>
#include <string>

namespace interlace {

enum class ErrorCode {
  invalid_argument,
  length_mismatch,
  degenerate_spectrum,
  not_interlacing,
  not_in_polytope,
  index_out_of_range,
  not_hermitian,
  no_convergence,
  boundary_point,
  basis_not_unitary,
  negative_weight,
  step_underflow,
  newton_divergence,
  shift_not_above_spectrum,
  frozen_mismatch,
  certificate_rejected,
};

const char* to_string(ErrorCode code);

/// Library-wide exception: a machine-readable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace interlace
