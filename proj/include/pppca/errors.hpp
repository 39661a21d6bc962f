#pragma once

#include <stdexcept>
#include <string>

namespace pppca {

// All library failures derive from Error and carry a stable machine-readable
// kind string that the CLI maps to exit codes and structured error objects.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& message)
      : std::runtime_error(message), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Input-level failures (CLI exit code 1).
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};
struct ShapeError : Error {
  explicit ShapeError(const std::string& m) : Error("ShapeError", m) {}
};
struct DegenerateFeature : Error {
  explicit DegenerateFeature(const std::string& m) : Error("DegenerateFeature", m) {}
};
struct DegenerateSpectrum : Error {
  explicit DegenerateSpectrum(const std::string& m) : Error("DegenerateSpectrum", m) {}
};
struct DegenerateBound : Error {
  explicit DegenerateBound(const std::string& m) : Error("DegenerateBound", m) {}
};
struct InfeasibleScenario : Error {
  explicit InfeasibleScenario(const std::string& m) : Error("InfeasibleScenario", m) {}
};
struct EmptyTally : Error {
  explicit EmptyTally(const std::string& m) : Error("EmptyTally", m) {}
};

// Numeric/internal failures (CLI exit code 2).
struct NumericalError : Error {
  explicit NumericalError(const std::string& m) : Error("NumericalError", m) {}
};
struct RangeError : Error {
  explicit RangeError(const std::string& m) : Error("RangeError", m) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& m) : Error("DomainError", m) {}
};

}  // namespace pppca
