#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace obstruction_lab {

// Every domain failure carries one of these kinds so the CLI can map it to an
// exit code and tests can assert on it without string matching.
enum class ErrorKind {
  EmptySet,
  DegenerateObstacle,
  InvalidInput,
  BadIndex,
  BadParam,
  BadDirection,
  SearchOverflow,
  MissingMetadata,
  MissingSeparation,
  HorizonExceedsWindow,
  NoAdmissibleRegion,
  EpsilonTooLarge,
  NotMultiple,
  NotFound,
  NoPartner,
  RealizationFailed,
  ParseError,
  VersionError,
  MissingTable,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

class LabError : public std::runtime_error {
 public:
  LabError(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace obstruction_lab
