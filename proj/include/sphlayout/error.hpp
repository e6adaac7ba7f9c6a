#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sphlayout {

enum class ErrorCode {
  InvalidArgument,
  DegenerateTriangle,
  DegenerateCentroid,
  DegeneratePolygon,
  CircumcenterAtOrigin,
  TooFewPoints,
  DegenerateInput,
  UnknownEdge,
  FlipWouldInvert,
  NotConverged,
  LevelTooLarge,
  NonPositiveExplicitWeight,
  RegionTooSmall,
  ParseError,
  IoError,
  CycleError,
};

std::string_view to_string(ErrorCode code);

/// Library-wide exception. `index` names the offending element when one is
/// known (a triangle id for circumcenter failures, a point id for duplicate
/// input, ...).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), index_(index) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DegenerateTriangle: return "DegenerateTriangle";
    case ErrorCode::DegenerateCentroid: return "DegenerateCentroid";
    case ErrorCode::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorCode::CircumcenterAtOrigin: return "CircumcenterAtOrigin";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::UnknownEdge: return "UnknownEdge";
    case ErrorCode::FlipWouldInvert: return "FlipWouldInvert";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::LevelTooLarge: return "LevelTooLarge";
    case ErrorCode::NonPositiveExplicitWeight: return "NonPositiveExplicitWeight";
    case ErrorCode::RegionTooSmall: return "RegionTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::CycleError: return "CycleError";
  }
  return "Unknown";
}

}  // namespace sphlayout
