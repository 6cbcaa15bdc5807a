#pragma once

#include <stdexcept>
#include <string>

namespace xyz2 {

// Raised when a request is well-formed but exceeds a hard size cap
// (exhaustive searches, exact decoding over large groups).
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by threshold estimation when the two failure curves do not
// cross anywhere on the common grid.
struct NotBracketedError : std::runtime_error {
  explicit NotBracketedError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace xyz2
