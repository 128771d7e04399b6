#include "fitsgeo/error.hpp"

namespace fitsgeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateGeometry: return "DegenerateGeometry";
    case ErrorCode::InvalidId: return "InvalidId";
    case ErrorCode::InvalidOpacity: return "InvalidOpacity";
    case ErrorCode::UnknownColor: return "UnknownColor";
    case ErrorCode::UnboundedSurface: return "UnboundedSurface";
    case ErrorCode::ResolutionTooLow: return "ResolutionTooLow";
    case ErrorCode::InvalidDensity: return "InvalidDensity";
    case ErrorCode::EmptyComposition: return "EmptyComposition";
    case ErrorCode::BadSpecies: return "BadSpecies";
    case ErrorCode::InvalidRatio: return "InvalidRatio";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateWithinFile: return "DuplicateWithinFile";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSurfaceName: return "UnknownSurfaceName";
    case ErrorCode::EmptyExpression: return "EmptyExpression";
    case ErrorCode::UnknownCell: return "UnknownCell";
    case ErrorCode::UnboundedRegionNeedsBox: return "UnboundedRegionNeedsBox";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NonFiniteNumber: return "NonFiniteNumber";
    case ErrorCode::NothingSelected: return "NothingSelected";
    case ErrorCode::EmptyScene: return "EmptyScene";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace fitsgeo
