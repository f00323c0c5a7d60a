#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace diffield {

enum class ErrorKind {
  ZeroDenominator,
  DivisionByZero,
  ForwardReference,
  UnknownSymbol,
  DuplicateName,
  InvalidTowerConstant,
  BoundsExceeded,
  NotAntiderivative,
  MalformedAntiderivative,
  Unsupported,
  NotFlat,
  AlreadyInBase,
  NotDifferential,
  NotTriangular,
  SyntaxError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace diffield
