#include "iminfer/error.hpp"

namespace iminfer {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyFocalSet: return "EmptyFocalSet";
    case ErrorKind::MassNotNormalized: return "MassNotNormalized";
    case ErrorKind::DegenerateGrid: return "DegenerateGrid";
    case ErrorKind::DegenerateSample: return "DegenerateSample";
    case ErrorKind::RangeExceeded: return "RangeExceeded";
    case ErrorKind::ThetaZero: return "ThetaZero";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

}  // namespace iminfer
