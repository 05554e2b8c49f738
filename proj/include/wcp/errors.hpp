#pragma once
// Error types shared across the library.

#include <stdexcept>
#include <string>

namespace wcp {

// Invalid descriptor string, input file, or argument combination.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Inversion requested for an element whose leading coefficient vanishes.
struct NotInvertible : std::runtime_error {
  explicit NotInvertible(const std::string& what) : std::runtime_error(what) {}
};

// A series has nonzero coefficients below the required support index.
struct SupportError : std::runtime_error {
  explicit SupportError(const std::string& what) : std::runtime_error(what) {}
};

// A scan-based constant required by the computation did not stabilize.
struct NotConverged : std::runtime_error {
  explicit NotConverged(const std::string& what) : std::runtime_error(what) {}
};

// A cross-check that should be impossible to fail has failed; indicates a
// kernel bug, not a user error.
struct InternalError : std::logic_error {
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace wcp
