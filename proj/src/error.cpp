#include "ushift/error.hpp"

namespace ushift {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UniverseMismatch: return "UniverseMismatch";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::SinkFound: return "SinkFound";
    case ErrorCode::EmptyRange: return "EmptyRange";
    case ErrorCode::OverlappingIndices: return "OverlappingIndices";
    case ErrorCode::InvalidPath: return "InvalidPath";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::InvalidCylinder: return "InvalidCylinder";
    case ErrorCode::PointsEqual: return "PointsEqual";
    case ErrorCode::LengthZeroPoint: return "LengthZeroPoint";
    case ErrorCode::NotFinite: return "NotFinite";
    case ErrorCode::TableNotShiftClosed: return "TableNotShiftClosed";
    case ErrorCode::RfumRequired: return "RfumRequired";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NotInGZero: return "NotInGZero";
    case ErrorCode::DegenerateWord: return "DegenerateWord";
    case ErrorCode::CapRequired: return "CapRequired";
    case ErrorCode::Parse: return "Parse";
  }
  return "Unknown";
}

}  // namespace ushift
