#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ead2iiif {

/// Presentation 3 language map: language tag -> values. Ordered by tag so
/// serialization is canonical.
using LanguageMap = std::map<std::string, std::vector<std::string>>;

LanguageMap language_map(const std::string& language, const std::string& value);

/// First value in `language`, else the first value of any language.
std::string first_value(const LanguageMap& map, const std::string& language = "");

inline constexpr std::string_view kNoLanguage = "none";
inline constexpr std::string_view kPresentation3Context = "http://iiif.io/api/presentation/3/context.json";

struct MetadataEntry {
  LanguageMap label;
  LanguageMap value;

  bool operator==(const MetadataEntry&) const = default;
};

/// A machine-readable description linked from a resource (`seeAlso`).
struct SeeAlso {
  std::string id;
  std::string kind = "Dataset";
  std::string format;
  LanguageMap label;

  bool operator==(const SeeAlso&) const = default;
};

struct Homepage {
  std::string id;
  LanguageMap label;

  bool operator==(const Homepage&) const = default;
};

enum class ResourceKind { Collection, Manifest, Canvas, Other };

std::string_view to_string(ResourceKind kind);
ResourceKind resource_kind_from_string(std::string_view type);

enum class BodyKind { Image, Video, Sound };

std::string_view to_string(BodyKind kind);
std::optional<BodyKind> body_kind_from_string(std::string_view type);

/// The single painting annotation body a Canvas carries.
struct PaintedBody {
  std::string location;
  BodyKind kind = BodyKind::Image;
  std::string format;
  std::optional<unsigned> width;
  std::optional<unsigned> height;
  std::optional<double> duration;

  bool operator==(const PaintedBody&) const = default;
};

/// A Collection, Manifest or Canvas. A Collection's items are references
/// (only id, kind and label set); a Manifest's items are full Canvases.
struct IiifResource {
  std::string id;
  ResourceKind kind = ResourceKind::Collection;
  /// Original `type` string when kind is Other.
  std::string other_type;
  LanguageMap label;
  std::vector<MetadataEntry> metadata;
  std::optional<Homepage> homepage;
  std::vector<SeeAlso> see_also;
  std::vector<IiifResource> items;
  std::optional<PaintedBody> content;
  std::optional<unsigned> width;
  std::optional<unsigned> height;
  std::optional<double> duration;
  std::optional<std::string> thumbnail;

  bool operator==(const IiifResource&) const = default;
};

/// Typed reference {id, kind, label} to `target`.
IiifResource reference_to(const IiifResource& target);

}  // namespace ead2iiif
