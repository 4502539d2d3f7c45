#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace p3p {

enum class ErrorKind {
  DegenerateTriangle,
  VertexCoincidence,
  OnChordLine,
  DomainError,
  DegreeDrop,
  NoRealTriplet,
  OnToroidPair,
  NoRealRoots,
  NoIntersection,
  ResidualTooLarge,
  SamplingStarved,
  PathDegenerate,
  PlanarCenter,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace p3p
