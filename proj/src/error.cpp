#include "ead2iiif/error.hpp"

namespace ead2iiif {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedXml: return "MalformedXml";
    case ErrorCode::WrongNamespace: return "WrongNamespace";
    case ErrorCode::MissingUnitId: return "MissingUnitId";
    case ErrorCode::UnmappedLevel: return "UnmappedLevel";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::MissingRequiredExtent: return "MissingRequiredExtent";
    case ErrorCode::BadDurationFormat: return "BadDurationFormat";
    case ErrorCode::InventoryOnNonItem: return "InventoryOnNonItem";
    case ErrorCode::InvalidTree: return "InvalidTree";
    case ErrorCode::ResolverUnavailable: return "ResolverUnavailable";
    case ErrorCode::NoResolverForCategory: return "NoResolverForCategory";
    case ErrorCode::SlugCollision: return "SlugCollision";
    case ErrorCode::MissingMedia: return "MissingMedia";
    case ErrorCode::MediaExtentMissing: return "MediaExtentMissing";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::UnserializableResource: return "UnserializableResource";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UriOutsideBase: return "UriOutsideBase";
    case ErrorCode::BindFailure: return "BindFailure";
    case ErrorCode::RootMissing: return "RootMissing";
    case ErrorCode::UnreadableInput: return "UnreadableInput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

Error Error::with_context(std::string_view context) const {
  std::string message(context);
  message += ": ";
  message += what();
  return Error(code_, message);
}

}  // namespace ead2iiif
