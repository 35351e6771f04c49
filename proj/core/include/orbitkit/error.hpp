#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitkit {

enum class Errc {
  empty_input,
  out_of_range,
  invalid_argument,
  length_mismatch,
  domain_gap,
  not_onto,
  not_finite_valued,
  budget_exceeded,
  index_out_of_range,
  no_sibling,
  hypothesis_not_checked,
  not_weak_dense,
  too_large,
  unknown_name,
  bad_params,
  parse_error,
  validation_error,
  io_error,
};

std::string_view errc_name(Errc code) noexcept;

/// Error raised by every orbitkit operation. The code identifies the failure
/// class; the message carries the offending value or location.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace orbitkit
