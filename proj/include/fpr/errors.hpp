#pragma once

#include <stdexcept>
#include <string>

namespace fpr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Ill-sorted construction or application (wrong argument sort, arity, ...).
class SortError : public Error {
 public:
  using Error::Error;
};

/// A position does not exist in the term it was used on.
class PositionError : public Error {
 public:
  using Error::Error;
};

/// Invalid rule or system construction (variable lhs, extra rhs variables, ...).
class SystemError : public Error {
 public:
  using Error::Error;
};

/// A redex descriptor that does not describe an actual redex of the term.
class InvalidRedexError : public Error {
 public:
  using Error::Error;
};

/// Input rejected by the rule transformation (non-linear pattern, wrong mode).
class TransformError : public Error {
 public:
  using Error::Error;
};

/// A replacement map that does not fit the signature.
class ReplacementMapError : public Error {
 public:
  using Error::Error;
};

/// A symbol name that cannot be rendered in the termination-problem format.
class TpdbExportError : public Error {
 public:
  using Error::Error;
};

}  // namespace fpr
