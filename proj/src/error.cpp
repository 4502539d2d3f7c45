#include "p3p/error.hpp"

namespace p3p {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorKind::VertexCoincidence: return "VertexCoincidence";
    case ErrorKind::OnChordLine: return "OnChordLine";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegreeDrop: return "DegreeDrop";
    case ErrorKind::NoRealTriplet: return "NoRealTriplet";
    case ErrorKind::OnToroidPair: return "OnToroidPair";
    case ErrorKind::NoRealRoots: return "NoRealRoots";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorKind::SamplingStarved: return "SamplingStarved";
    case ErrorKind::PathDegenerate: return "PathDegenerate";
    case ErrorKind::PlanarCenter: return "PlanarCenter";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace p3p
