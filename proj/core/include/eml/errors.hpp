#pragma once

#include <stdexcept>
#include <string>

namespace eml {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad document, non-pointed cone, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A truncated series was asked to deliver more precision than it carries.
class OrderBudgetError : public Error {
 public:
  using Error::Error;
};

/// An identity guaranteed by theory failed, e.g. a nonzero remainder when
/// clearing a pole. Always an implementation bug upstream.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace eml
