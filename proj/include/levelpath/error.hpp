#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace levelpath {

enum class ErrorKind {
  Lex,
  Parse,
  DivisionByZero,
  Domain,
  NonFiniteValue,
  SingularProximity,
  CorrectorFailure,
  Configuration,
  Format,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure in the library is reported through this type. Lexer and
/// parser errors also carry the character offset into the source text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
};

}  // namespace levelpath
