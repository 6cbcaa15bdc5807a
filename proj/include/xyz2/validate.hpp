#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "xyz2/code.hpp"

namespace xyz2 {

// Outcome of the algebraic checks on a StabilizerCode. Every builder in
// code.hpp must produce a code for which all booleans hold.
struct ValidationReport {
  bool commutation_ok = false;
  std::optional<std::pair<int, int>> noncommuting_pair;  // generator ordinals
  std::size_t rank = 0;
  bool rank_ok = false;
  bool single_error_detection_ok = false;
  bool logical_ok = false;
  bool directionality_ok = true;  // XYZ^2 only; vacuously true otherwise

  std::optional<std::size_t> distance_unrestricted;
  std::map<Axis, std::size_t> distance_pure;
  std::map<Axis, Vec2> syndrome_directions;  // XYZ^2 only

  bool all_ok() const {
    return commutation_ok && rank_ok && single_error_detection_ok && logical_ok &&
           directionality_ok;
  }
  std::string summary() const;
};

// Runs all invariant checks; when compute_distances is set, fills the
// distance fields for every search that fits the size caps and silently
// skips the rest.
ValidationReport validate_code(const StabilizerCode& code, bool compute_distances);

struct MinWeightResult {
  std::size_t weight = 0;
  uint64_t representative_count = 0;
};

// Minimum weight over all operators that commute with every generator and
// are not in the stabilizer group. With a pure-axis restriction only chains
// of that single letter are searched. Exhaustive; throws CapabilityError
// when the search space exceeds 2^24 coset elements.
MinWeightResult min_weight_logical(const StabilizerCode& code,
                                   std::optional<Axis> restriction);

}  // namespace xyz2
