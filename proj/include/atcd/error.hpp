#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace atcd
{

enum class ErrorKind
{
  // document / validation
  CycleDetected,
  MultipleRoots,
  NoRoot,
  LeafGate,
  InternalBAS,
  MissingCost,
  NegativeAttribute,
  ProbOutOfRange,
  DuplicateId,
  DuplicateChild,
  DanglingChildRef,
  MalformedDocument,
  // transforms and builders
  KeyIsNotGate,
  NotTreelike,
  LengthMismatch,
  NegativeCoefficient,
  NotMonotone,
  NonZeroEmptyValue,
  TooLarge,
  OutOfRange,
  EmptyTree,
  NoBlocks,
  // analyses
  InfeasibleDamageThreshold,
  NonFiniteAttribute,
  BudgetExceeded,
  TooManyBas,
  TooManyActiveBas,
};

std::string_view to_string( ErrorKind kind );

/// Every failure raised by the library carries a kind so callers can map it
/// to an exit status without parsing messages.
class Error : public std::runtime_error
{
public:
  Error( ErrorKind kind, const std::string& message )
      : std::runtime_error( std::string( to_string( kind ) ) + ": " + message ), kind_( kind )
  {
  }

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace atcd
