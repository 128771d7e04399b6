#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fitsgeo {

/// Machine-readable error categories shared by all modules.
enum class ErrorCode {
  DegenerateGeometry,
  InvalidId,
  InvalidOpacity,
  UnknownColor,
  UnboundedSurface,
  ResolutionTooLow,
  InvalidDensity,
  EmptyComposition,
  BadSpecies,
  InvalidRatio,
  ParseError,
  DuplicateWithinFile,
  NotFound,
  SyntaxError,
  UnknownSurfaceName,
  EmptyExpression,
  UnknownCell,
  UnboundedRegionNeedsBox,
  PreconditionFailed,
  NonFiniteNumber,
  NothingSelected,
  EmptyScene,
  SchemaError,
  Io,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fitsgeo
