#pragma once

#include <stdexcept>
#include <string>

namespace ccc {

// Tolerance policy. Identities that should hold to double rounding
// (normalization, CPT row sums, renormalization) are checked at 1e-12;
// closed-form values reached through a different algebraic route are
// compared at 1e-9.
inline constexpr double kNormTol = 1e-12;
inline constexpr double kDerivedTol = 1e-9;

// Below this weight an event is treated as impossible rather than
// renormalized.
inline constexpr double kZeroWeight = 1e-15;

// Projection or conditioning onto an event of numerically zero probability.
class ZeroProbabilityError : public std::runtime_error {
 public:
  explicit ZeroProbabilityError(const std::string& what)
      : std::runtime_error(what) {}
};

// A boundary constraint that no history satisfies under the requested query.
class ImpossibleConstraintError : public std::runtime_error {
 public:
  explicit ImpossibleConstraintError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ccc
