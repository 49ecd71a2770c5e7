#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "floquet3/coeffs.hpp"
#include "floquet3/error.hpp"

namespace floquet3 {

/// Malformed coefficient spec; line() is 1-based, 0 when not applicable.
class SpecParseError : public InvalidInput {
 public:
  SpecParseError(const std::string& what, std::size_t line = 0)
      : InvalidInput(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Parses a JSON coefficient spec. Two shapes are accepted:
///
///   { "p_modes": [ {"n": 1, "re": 0.5, "im": 0.0}, ... ],
///     "q_modes": [ ... ] }
///
///   { "piecewise": { "breakpoints": [0.0, 0.5],
///                    "p_values": [1.0, -1.0],
///                    "q_values": [0.0, 0.0] } }
///
/// An optional "description" string is ignored; any other key is an error.
/// Modes with only n > 0 are completed by conjugate symmetry later, in
/// make_coefficients.
CoefficientDescription parse_coefficient_spec(std::string_view text);

CoefficientDescription load_coefficient_spec(const std::filesystem::path& path);

/// Parse + validate.
PeriodicCoefficients load_coefficients(const std::filesystem::path& path);

}  // namespace floquet3
