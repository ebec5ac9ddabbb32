#pragma once

#include <stdexcept>
#include <string>

namespace ushift {

enum class ErrorCode {
  UniverseMismatch,
  InvalidPresentation,
  SinkFound,
  EmptyRange,
  OverlappingIndices,
  InvalidPath,
  NotComposable,
  InvalidCylinder,
  PointsEqual,
  LengthZeroPoint,
  NotFinite,
  TableNotShiftClosed,
  RfumRequired,
  OutsideDomain,
  NotInGZero,
  DegenerateWord,
  CapRequired,
  Parse,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error(ErrorCode::Parse, what), line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace ushift
