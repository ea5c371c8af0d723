#pragma once

#include <stdexcept>
#include <string>

namespace hallforge {

/// Base of every error the library raises. `kind()` is a stable
/// machine-readable tag used by the CLI for its exit-code contract.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

/// Operation not supported by this backend (e.g. products of line bundles).
struct CapabilityError : Error {
  explicit CapabilityError(const std::string& w) : Error("capability", w) {}
};

/// A configured resource bound (dimension, field size, gamma) was exceeded.
struct ResourceError : Error {
  ResourceError(const std::string& bound, long long limit, long long requested)
      : Error("resource", "resource bound '" + bound + "' exceeded: limit " +
                              std::to_string(limit) + ", requested " +
                              std::to_string(requested)),
        bound_name(bound),
        limit(limit),
        requested(requested) {}
  std::string bound_name;
  long long limit;
  long long requested;
};

struct ParseError : Error {
  ParseError(const std::string& w, std::size_t pos)
      : Error("parse", w + " (at offset " + std::to_string(pos) + ")"), offset(pos) {}
  explicit ParseError(const std::string& w) : Error("parse", w), offset(0) {}
  std::size_t offset;
};

struct PreconditionError : Error {
  explicit PreconditionError(const std::string& w) : Error("precondition", w) {}
};

struct BackendMismatch : Error {
  explicit BackendMismatch(const std::string& w) : Error("backend-mismatch", w) {}
};

/// An internal invariant failed; indicates a bug, never a user error.
struct InvariantViolation : Error {
  explicit InvariantViolation(const std::string& w) : Error("invariant", w) {}
};

/// Subrepresentation counts did not stabilise to an integer polynomial.
struct NonPolynomialCount : Error {
  explicit NonPolynomialCount(const std::string& w) : Error("non-polynomial-count", w) {}
};

/// Family product whose per-point structure constants vary along the base.
struct NonConstantFamily : Error {
  explicit NonConstantFamily(const std::string& w) : Error("non-constant-family", w) {}
};

struct CacheError : Error {
  explicit CacheError(const std::string& w) : Error("cache", w) {}
};

}  // namespace hallforge
