#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mgp {

inline constexpr double kPi = 3.14159265358979323846;

// Thrown when a linear-algebra or sampling step fails numerically
// (e.g. Cholesky failure after jitter escalation). Input-contract
// violations use std::invalid_argument instead; the CLI maps the two
// to exit codes 3 and 2.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shortest 17-significant-digit representation; round-trips doubles
// exactly and is locale-independent.
std::string format_double(double v);

// Locale-independent strtod replacement. The whole token must parse.
bool parse_double(std::string_view token, double& out);

}  // namespace mgp
