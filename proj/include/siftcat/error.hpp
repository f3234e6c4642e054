#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace siftcat {

enum class ErrorKind {
  // category tables
  MissingComposite,
  NonAssociative,
  UnitLawViolation,
  DanglingIdentifier,
  DuplicateIdentifier,
  // diagrams and sets
  NotFunctorial,
  UnknownObject,
  NotParallel,
  CarrierMismatch,
  NotReflexive,
  NotFullyFaithful,
  // constructions
  NotSifted,
  PullbackAbsent,
  VertexMismatch,
  NotComposable,
  SectionMissing,
  BudgetExceeded,
  // front end
  ParseError,
  ValidationError,
  CheckFailed,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace siftcat
