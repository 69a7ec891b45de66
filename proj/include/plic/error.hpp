#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace plic {

enum class ErrorKind {
  OutOfDomain,
  InfinitePreimage,
  NotHomeomorphism,
  FixedPointViolated,
  NoDepartures,
  HalfConstant,
  EmptyIntersection,
  PreconditionViolated,
  OrderViolated,
  NoLift,
  HypothesisFailed,
  SearchExhausted,
  IndexOutOfRange,
  NotAThread,
  EndpointCoordinate,
  LengthMismatch,
  LadderExhausted,
  WindowTooShort,
  DiameterGuardFailed,
  MixedOrientations,
  SimplicityViolated,
  ParseError,
  InternalInvariant,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InfinitePreimage: return "InfinitePreimage";
    case ErrorKind::NotHomeomorphism: return "NotHomeomorphism";
    case ErrorKind::FixedPointViolated: return "FixedPointViolated";
    case ErrorKind::NoDepartures: return "NoDepartures";
    case ErrorKind::HalfConstant: return "HalfConstant";
    case ErrorKind::EmptyIntersection: return "EmptyIntersection";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::OrderViolated: return "OrderViolated";
    case ErrorKind::NoLift: return "NoLift";
    case ErrorKind::HypothesisFailed: return "HypothesisFailed";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotAThread: return "NotAThread";
    case ErrorKind::EndpointCoordinate: return "EndpointCoordinate";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::LadderExhausted: return "LadderExhausted";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::DiameterGuardFailed: return "DiameterGuardFailed";
    case ErrorKind::MixedOrientations: return "MixedOrientations";
    case ErrorKind::SimplicityViolated: return "SimplicityViolated";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace plic
