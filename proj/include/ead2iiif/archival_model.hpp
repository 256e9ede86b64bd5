#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ead2iiif {

/// Archival strata, ordered from broadest to narrowest.
enum class ArchivalLevel { Fonds = 0, Series = 1, Subseries = 2, File = 3, Item = 4 };

std::string_view to_string(ArchivalLevel level);
std::optional<ArchivalLevel> level_from_string(std::string_view name);

/// Strict nesting order: `child` may sit below `parent` only if deeper.
constexpr bool is_deeper(ArchivalLevel child, ArchivalLevel parent) {
  return static_cast<int>(child) > static_cast<int>(parent);
}

enum class TermCategory { Subject, Place, Person, CorporateBody };

std::string_view to_string(TermCategory category);
/// Interchange spelling: "subject" | "place" | "person" | "corporate".
std::string_view interchange_name(TermCategory category);
std::optional<TermCategory> category_from_interchange(std::string_view name);

struct AccessTerm {
  TermCategory category = TermCategory::Subject;
  std::string part;
  std::optional<std::string> source;
  std::optional<std::string> identifier;
  std::optional<std::string> normal_form;

  bool operator==(const AccessTerm&) const = default;
};

enum class MediaKind { Image, Video, Audio };

std::string_view to_string(MediaKind kind);
std::optional<MediaKind> media_kind_from_string(std::string_view name);

struct MediaAsset {
  std::string asset_id;
  MediaKind kind = MediaKind::Image;
  std::string location;
  std::string media_format;
  std::optional<unsigned> width;
  std::optional<unsigned> height;
  std::optional<double> duration;
  std::optional<std::string> thumbnail;

  bool operator==(const MediaAsset&) const = default;
};

struct Extent {
  unsigned quantity = 1;
  std::string unit_type;
  std::string note;

  bool operator==(const Extent&) const = default;
};

struct DescriptivePair {
  std::string label;
  std::string value;

  bool operator==(const DescriptivePair&) const = default;
};

struct ArchivalUnit {
  std::string unit_id;
  std::optional<std::string> country_code;
  ArchivalLevel level = ArchivalLevel::Item;
  std::string title;
  std::string date_display;
  std::optional<std::string> date_normal;
  std::optional<Extent> extent;
  std::optional<std::string> scope_note;
  std::optional<std::string> repository;
  std::vector<DescriptivePair> descriptive_pairs;
  std::vector<AccessTerm> access_terms;
  std::vector<MediaAsset> media;
  std::vector<ArchivalUnit> children;
  int source_order = 0;

  bool operator==(const ArchivalUnit&) const = default;
};

// Integrity rule codes reported by validate_tree.
namespace rule {
inline constexpr std::string_view RootNotFonds = "RootNotFonds";
inline constexpr std::string_view EmptyUnitId = "EmptyUnitId";
inline constexpr std::string_view DuplicateUnitId = "DuplicateUnitId";
inline constexpr std::string_view NestingViolation = "NestingViolation";
inline constexpr std::string_view ItemHasChildren = "ItemHasChildren";
inline constexpr std::string_view MediaOnNonItem = "MediaOnNonItem";
inline constexpr std::string_view SourceOrder = "SourceOrder";
inline constexpr std::string_view ExtentQuantity = "ExtentQuantity";
inline constexpr std::string_view MediaExtent = "MediaExtent";
inline constexpr std::string_view TermIdentifier = "TermIdentifier";
inline constexpr std::string_view TermSource = "TermSource";
}  // namespace rule

struct Violation {
  std::string unit_id;
  std::string rule;
  std::string message;

  bool operator==(const Violation&) const = default;
};

/// Thesaurus names accepted on normalized access terms.
std::set<std::string> default_term_sources();

/// Checks every node invariant; an empty result means the tree is valid.
/// The root must be a Fonds.
std::vector<Violation> validate_tree(const ArchivalUnit& tree,
                                     const std::set<std::string>& term_sources = default_term_sources());

/// Same rules as validate_tree without requiring a Fonds root. Used for
/// per-unit EAD exports.
std::vector<Violation> validate_subtree(const ArchivalUnit& unit,
                                        const std::set<std::string>& term_sources = default_term_sources());

/// Checks one asset in isolation; returns a message per broken rule.
std::vector<std::string> media_asset_problems(const MediaAsset& asset);

const ArchivalUnit* find_unit(const ArchivalUnit& tree, std::string_view unit_id);
ArchivalUnit* find_unit(ArchivalUnit& tree, std::string_view unit_id);

using MediaInventory = std::map<std::string, std::vector<MediaAsset>>;

struct AttachResult {
  ArchivalUnit tree;
  std::vector<std::string> warnings;
};

/// Replaces the media list of every inventoried item. Throws
/// InventoryOnNonItem when a key names a non-item unit.
AttachResult attach_media(ArchivalUnit tree, const MediaInventory& inventory);

std::size_t count_units(const ArchivalUnit& tree);

}  // namespace ead2iiif
