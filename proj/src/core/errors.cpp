#include "obstruction_lab/errors.hpp"

namespace obstruction_lab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::DegenerateObstacle: return "DegenerateObstacle";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::BadDirection: return "BadDirection";
    case ErrorKind::SearchOverflow: return "SearchOverflow";
    case ErrorKind::MissingMetadata: return "MissingMetadata";
    case ErrorKind::MissingSeparation: return "MissingSeparation";
    case ErrorKind::HorizonExceedsWindow: return "HorizonExceedsWindow";
    case ErrorKind::NoAdmissibleRegion: return "NoAdmissibleRegion";
    case ErrorKind::EpsilonTooLarge: return "EpsilonTooLarge";
    case ErrorKind::NotMultiple: return "NotMultiple";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::NoPartner: return "NoPartner";
    case ErrorKind::RealizationFailed: return "RealizationFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::VersionError: return "VersionError";
    case ErrorKind::MissingTable: return "MissingTable";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

LabError::LabError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

}  // namespace obstruction_lab
