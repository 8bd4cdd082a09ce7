#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gammalg {

enum class ErrorKind {
  InvalidSpec,
  EmptyShift,
  WrongPresentation,
  AlphabetMismatch,
  BadLength,
  NotAnArrow,
  NotUnitModulus,
  NotCoreElement,
  LevelTooLow,
  InvalidPoint,
  BasisOverflow,
  ClassExplosion,
  NotApplicable,
  ParseError,
  Internal,
};

std::string_view error_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_name(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace gammalg
