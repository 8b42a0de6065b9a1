#pragma once

#include <stdexcept>
#include <string>

namespace fibcheck {

enum class ErrorCode {
  MissingComposite,
  NonAssociative,
  UnitLawViolation,
  DanglingId,
  BaseMismatch,
  BoundaryMismatch,
  SizeCapExceeded,
  UnknownObject,
  UnknownMorphism,
  NotOverBase,
  NotOverSource,
  SquareMismatch,
  PreconditionFailed,
  NoInitial,
  NoTerminal,
  MissingLift,
  ParseError,
};

const char* error_code_name(ErrorCode c);

struct Error : std::runtime_error {
  ErrorCode code;
  Error(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_code_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw Error(c, msg); }

}  // namespace fibcheck
