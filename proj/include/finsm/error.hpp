#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace finsm {

enum class ErrorCode {
  DuplicateName,
  InvalidName,
  UnknownState,
  UnknownTransition,
  EmptyLabel,
  EmptySymbol,
  MixedEpsilonLabel,
  EpsilonOnTape,
  UnknownTape,
  AlphabetTooLarge,
  InvalidArgument,
  ParseError,
  SchemaError,
  InvariantError,
  VersionError,
  NotFound,
  InvalidId,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// the CLI and the HTTP layer can map it to exit codes / status codes.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace finsm
