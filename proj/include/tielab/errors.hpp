#pragma once

#include <stdexcept>
#include <string>

namespace tielab {

// Bad user input: parameters out of range, malformed files, unsupported
// label combinations.  The CLI maps this to exit code 2.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A numerical certificate failed: an enumeration tail cannot be bounded,
// a quadrature did not stabilize, a decay window did not close.  The CLI
// maps this to exit code 3.  Results are withheld rather than degraded.
struct DiagnosticError : std::runtime_error {
  explicit DiagnosticError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace tielab
