#include "pcasim/error.hpp"

namespace pcasim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::CategoricalRejected: return "CategoricalRejected";
    case ErrorCode::TooFewRows: return "TooFewRows";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidP: return "InvalidP";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotDescending: return "NotDescending";
    case ErrorCode::NotUnitVector: return "NotUnitVector";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::NotCentered: return "NotCentered";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::EmptyComplement: return "EmptyComplement";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::DegenerateData: return "DegenerateData";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  return code == ErrorCode::NoConvergence ||
         code == ErrorCode::NotPositiveSemidefinite ||
         code == ErrorCode::DegenerateData;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace pcasim
