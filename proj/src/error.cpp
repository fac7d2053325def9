#include "levelpath/error.hpp"

namespace levelpath {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Lex: return "LexError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::SingularProximity: return "SingularProximity";
    case ErrorKind::CorrectorFailure: return "CorrectorFailure";
    case ErrorKind::Configuration: return "ConfigurationError";
    case ErrorKind::Format: return "FormatError";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> position)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), position_(position) {}

}  // namespace levelpath
