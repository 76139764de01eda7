#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lazyh2 {

using Elem = std::uint32_t;

enum class ErrorKind {
  DivisionByZero,
  NotOddRoot,
  NotAGroup,
  OrderLimitExceeded,
  NotAbelian,
  NotInSubgroup,
  EvenOrder,
  DegreeMismatch,
  NotInvertible,
  NotATwist,
  NotInvariant,
  NotACocycle,
  NotSupported,
  ThetaContractViolated,
  InvalidInput,
  Internal,
};

inline std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::NotOddRoot: return "NotOddRoot";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::OrderLimitExceeded: return "OrderLimitExceeded";
    case ErrorKind::NotAbelian: return "NotAbelian";
    case ErrorKind::NotInSubgroup: return "NotInSubgroup";
    case ErrorKind::EvenOrder: return "EvenOrder";
    case ErrorKind::DegreeMismatch: return "DegreeMismatch";
    case ErrorKind::NotInvertible: return "NotInvertible";
    case ErrorKind::NotATwist: return "NotATwist";
    case ErrorKind::NotInvariant: return "NotInvariant";
    case ErrorKind::NotACocycle: return "NotACocycle";
    case ErrorKind::NotSupported: return "NotSupported";
    case ErrorKind::ThetaContractViolated: return "ThetaContractViolated";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(to_string(kind)) + ": " + msg), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Thrown by group validation; carries the offending triple (a, b, c) or, for
// identity/inverse failures, the element in `a`.
class NotAGroupError : public Error {
 public:
  NotAGroupError(const std::string& msg, Elem a, Elem b, Elem c)
      : Error(ErrorKind::NotAGroup, msg), a_(a), b_(b), c_(c) {}

  Elem a() const { return a_; }
  Elem b() const { return b_; }
  Elem c() const { return c_; }

 private:
  Elem a_, b_, c_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace lazyh2
