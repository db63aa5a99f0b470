#include "qra/error.hpp"

namespace qra {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMeasurand: return "UnknownMeasurand";
    case ErrorKind::UnknownCondition: return "UnknownCondition";
    case ErrorKind::EmptyGroup: return "EmptyGroup";
    case ErrorKind::MixedGroup: return "MixedGroup";
    case ErrorKind::InvalidSampleSize: return "InvalidSampleSize";
    case ErrorKind::ValueBelowScale: return "ValueBelowScale";
    case ErrorKind::DegenerateMean: return "DegenerateMean";
    case ErrorKind::InvalidProbability: return "InvalidProbability";
    case ErrorKind::InvalidDf: return "InvalidDf";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace qra
