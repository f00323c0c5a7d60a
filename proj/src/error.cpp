#include "diffield/error.hpp"

namespace diffield {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::ForwardReference: return "ForwardReference";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::InvalidTowerConstant: return "InvalidTowerConstant";
    case ErrorKind::BoundsExceeded: return "BoundsExceeded";
    case ErrorKind::NotAntiderivative: return "NotAntiderivative";
    case ErrorKind::MalformedAntiderivative: return "MalformedAntiderivative";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::NotFlat: return "NotFlat";
    case ErrorKind::AlreadyInBase: return "AlreadyInBase";
    case ErrorKind::NotDifferential: return "NotDifferential";
    case ErrorKind::NotTriangular: return "NotTriangular";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace diffield
