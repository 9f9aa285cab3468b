#pragma once

#include <stdexcept>
#include <string>

namespace bargmann {

// Parameters fall outside the region where a formula or method applies,
// e.g. |g/omega| >= 1 for the two-mode closed forms.
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative method (Newton, continued fraction) failed to reach tolerance.
class convergence_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: invalid sector label, model/sector mismatch, bad sizes.
// std::invalid_argument is used directly for these.

}  // namespace bargmann
