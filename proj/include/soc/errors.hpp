#pragma once

#include <stdexcept>
#include <string>

namespace soc {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct NonSquare : Error {
  explicit NonSquare(const std::string& what) : Error(what) {}
};

struct ConvergenceFailure : Error {
  explicit ConvergenceFailure(const std::string& what) : Error(what) {}
};

struct SpectralPoint : Error {
  explicit SpectralPoint(const std::string& what) : Error(what) {}
};

struct DomainViolation : Error {
  explicit DomainViolation(const std::string& what) : Error(what) {}
};

struct DimensionMismatch : Error {
  explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct IndexMismatch : Error {
  explicit IndexMismatch(const std::string& what) : Error(what) {}
};

struct UnsupportedLevel : Error {
  explicit UnsupportedLevel(const std::string& what) : Error(what) {}
};

struct MissingDistinguished : Error {
  explicit MissingDistinguished(const std::string& what) : Error(what) {}
};

struct ValidationFailure : Error {
  explicit ValidationFailure(const std::string& what) : Error(what) {}
};

struct UnregisteredFunctor : Error {
  explicit UnregisteredFunctor(const std::string& what) : Error(what) {}
};

struct EmptyGraph : Error {
  explicit EmptyGraph(const std::string& what) : Error(what) {}
};

struct InvalidGraph : Error {
  explicit InvalidGraph(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct InconsistentDecomposition : Error {
  explicit InconsistentDecomposition(const std::string& what) : Error(what) {}
};

}  // namespace soc
