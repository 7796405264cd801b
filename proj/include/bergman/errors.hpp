#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bergman {

/// Base of every error raised by the library. `kind()` is a stable,
/// machine-readable tag used in CLI error records.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error("domain", what) {}
};

struct CapacityError : Error {
  explicit CapacityError(const std::string& what) : Error("capacity", what) {}
};

class RankDeficiencyError : public Error {
 public:
  RankDeficiencyError(std::size_t pivot, double value, double floor)
      : Error("rank_deficiency",
              "Cholesky pivot " + std::to_string(pivot) + " = " + std::to_string(value) +
                  " is below the jitter floor " + std::to_string(floor)),
        pivot_(pivot) {}
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

struct DegeneracyError : Error {
  explicit DegeneracyError(const std::string& what) : Error("degeneracy", what) {}
};

struct NumericalDerivativeError : Error {
  explicit NumericalDerivativeError(const std::string& what)
      : Error("numerical_derivative", what) {}
};

struct UnreliableIntegralError : Error {
  explicit UnreliableIntegralError(const std::string& what)
      : Error("unreliable_integral", what) {}
};

struct NotHarmonicError : Error {
  explicit NotHarmonicError(const std::string& what) : Error("not_harmonic", what) {}
};

struct InvariantFailure : Error {
  explicit InvariantFailure(const std::string& what) : Error("invariant_failure", what) {}
};

struct DegenerateSectionError : Error {
  explicit DegenerateSectionError(const std::string& what)
      : Error("degenerate_section", what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse", what) {}
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

}  // namespace bergman
