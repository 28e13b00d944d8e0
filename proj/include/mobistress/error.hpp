#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mobistress {

enum class ErrorKind {
  DomainTooWide,
  UnknownChoice,
  DateOutOfTerm,
  ClassTooSmall,
  BatchTooSmall,
  StaleCache,
  EmptyMatrix,
  ConfigInvalid,
  FileMissing,
  HeaderMismatch,
  MalformedRow,
  FormatError,
  EmptyDataset,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception. Every failure mode named by a module carries its
/// kind so callers (notably the CLI) can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace mobistress
