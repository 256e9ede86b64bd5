#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "ead2iiif/ead_io.hpp"
#include "ead2iiif/iiif_build.hpp"
#include "ead2iiif/iiif_model.hpp"

namespace ead2iiif {

enum class Severity { Error, Warning };

std::string_view to_string(Severity severity);

// Closed set of validator rule codes.
namespace check {
inline constexpr std::string_view MissingId = "MissingId";
inline constexpr std::string_view RelativeId = "RelativeId";
inline constexpr std::string_view MissingLabel = "MissingLabel";
inline constexpr std::string_view UnknownType = "UnknownType";
inline constexpr std::string_view CollectionBadItem = "CollectionBadItem";
inline constexpr std::string_view ManifestBadItem = "ManifestBadItem";
inline constexpr std::string_view ManifestNoCanvas = "ManifestNoCanvas";
inline constexpr std::string_view CanvasNoExtent = "CanvasNoExtent";
inline constexpr std::string_view ExtentBodyMismatch = "ExtentBodyMismatch";
inline constexpr std::string_view DuplicateId = "DuplicateId";
inline constexpr std::string_view DanglingReference = "DanglingReference";
inline constexpr std::string_view EmptyMetadata = "EmptyMetadata";
inline constexpr std::string_view MissingSeeAlso = "MissingSeeAlso";
inline constexpr std::string_view CollectionEmpty = "CollectionEmpty";
}  // namespace check

struct ValidationIssue {
  std::string resource_id;
  Severity severity = Severity::Error;
  std::string rule;
  std::string message;

  bool operator==(const ValidationIssue&) const = default;
};

std::size_t count_errors(const std::vector<ValidationIssue>& issues);

/// Presentation 3 JSON-LD: 2-space indent, fixed property order, trailing
/// newline. Throws UnserializableResource when validate_resource reports
/// an Error.
std::string serialize(const IiifResource& resource);

/// Reads back serialized JSON-LD. Unmodeled properties are ignored.
/// Throws UnreadableInput on malformed JSON or a non-object top level.
IiifResource parse_resource(std::string_view json_text);

/// Structural checks on one resource and everything it embeds.
std::vector<ValidationIssue> validate_resource(const IiifResource& resource);

/// validate_resource over every Collection and Manifest in `resources`, plus
/// DanglingReference for Collection items that point outside the set.
std::vector<ValidationIssue> validate_resources(const std::vector<IiifResource>& resources);
std::vector<ValidationIssue> validate_set(const ResourceSet& set);

/// Writes each Collection and Manifest at the path its id takes under
/// base_uri, and the EAD export of each described unit at its seeAlso
/// path. `ead` supplies the control header and the (enriched) tree.
/// Returns the written paths relative to out_dir, sorted.
/// Throws UriOutsideBase, UnserializableResource, IoFailure.
std::vector<std::string> write_site(const ResourceSet& set, const EadDocument& ead,
                                    const std::filesystem::path& out_dir);

/// Path of `uri` relative to `base_uri`; throws UriOutsideBase.
std::string relative_to_base(std::string_view uri, std::string_view base_uri);

}  // namespace ead2iiif
