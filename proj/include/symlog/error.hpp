#pragma once

#include <stdexcept>
#include <string>

namespace symlog {

enum class ErrorKind {
  Substitution,         // substitution by a non-closed term
  UnclassifiedLiteral,  // duality applied outside the qubit dictionary
  InvariantViolation,   // domain record rejected by the registry
  UnknownDomain,
  EmptyDomain,
  FocusedNonSingleton,
  NotVirtualSingleton,
  NotSymmetricConfig,
  SlotMismatch,
  NonDyadicProbability,
  InvalidQubit,
  Parse,
  Config,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Substitution: return "Substitution";
    case ErrorKind::UnclassifiedLiteral: return "UnclassifiedLiteral";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::UnknownDomain: return "UnknownDomain";
    case ErrorKind::EmptyDomain: return "EmptyDomain";
    case ErrorKind::FocusedNonSingleton: return "FocusedNonSingleton";
    case ErrorKind::NotVirtualSingleton: return "NotVirtualSingleton";
    case ErrorKind::NotSymmetricConfig: return "NotSymmetricConfig";
    case ErrorKind::SlotMismatch: return "SlotMismatch";
    case ErrorKind::NonDyadicProbability: return "NonDyadicProbability";
    case ErrorKind::InvalidQubit: return "InvalidQubit";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Config: return "Config";
  }
  return "?";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace symlog
