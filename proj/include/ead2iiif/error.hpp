#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ead2iiif {

enum class ErrorCode {
  // ead_io
  MalformedXml,
  WrongNamespace,
  MissingUnitId,
  UnmappedLevel,
  SchemaViolation,
  MissingRequiredExtent,
  BadDurationFormat,
  // archival_model
  InventoryOnNonItem,
  InvalidTree,
  // enrichment
  ResolverUnavailable,
  NoResolverForCategory,
  // iiif_build
  SlugCollision,
  MissingMedia,
  MediaExtentMissing,
  EmptyFile,
  // iiif_serialize
  UnserializableResource,
  IoFailure,
  UriOutsideBase,
  // publisher
  BindFailure,
  RootMissing,
  // cli
  UnreadableInput,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the whole pipeline; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  /// Same code, message prefixed with context (unit id, file name, ...).
  Error with_context(std::string_view context) const;

 private:
  ErrorCode code_;
};

}  // namespace ead2iiif
