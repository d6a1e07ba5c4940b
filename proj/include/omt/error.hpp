#pragma once

#include <stdexcept>
#include <string>

namespace omt {

enum class ErrorKind {
  Arithmetic,
  MalformedComponent,
  PointOutsideDomain,
  SubsetOutsideDomain,
  WellFormed,
  ParseError,
  ValidationError,
  NotHausdorff,
  NotT3,
  NotNearCompact,
  NotSeparable,
  NotClosed,
  NotDisjoint,
  Unbounded,
  HalfOpenPiece,
  ExceptionalSetInfinite,
  FiniteSpace,
  NonInjectiveMap,
  NotTotal,
  UnknownExample,
  UnknownCase,
  UsageError,
  Internal,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace omt
