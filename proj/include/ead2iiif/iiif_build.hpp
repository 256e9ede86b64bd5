#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ead2iiif/archival_model.hpp"
#include "ead2iiif/iiif_model.hpp"

namespace ead2iiif {

struct PlaceholderImage {
  std::string location;
  std::string format = "image/png";
  unsigned width = 1000;
  unsigned height = 1000;
};

struct BuildConfig {
  /// Absolute, no trailing slash.
  std::string base_uri = "http://127.0.0.1:5501";
  std::string default_language = "it";
  /// `{base}` and `{slug}` are substituted.
  std::string ead_export_uri_pattern = "{base}/ead/{slug}.xml";
  std::optional<std::string> institution_homepage;
  std::optional<std::string> homepage_label;
  /// Strict: an item without media is an error. Lenient: it gets a
  /// placeholder Canvas when `placeholder` is set and is skipped otherwise.
  bool strict_media = true;
  std::optional<PlaceholderImage> placeholder;
};

/// Throws InvalidConfig when base_uri is relative or ends with '/', or the
/// EAD export pattern does not yield an absolute URI.
void check_build_config(const BuildConfig& config);

/// Case-folded unit id with runs of non-alphanumerics collapsed to '-'.
std::string slugify(std::string_view unit_id);

/// Collection: {base}/collection/{slug}.json
/// Manifest:   {base}/manifest/{slug}.json
/// Canvas:     {base}/manifest/{slug}/canvas/{ordinal}
std::string mint_uri(const BuildConfig& config, ResourceKind kind, std::string_view unit_id,
                     std::optional<std::size_t> ordinal = std::nullopt);

/// Mints URIs while checking that distinct unit ids never share a slug.
class UriMinter {
 public:
  explicit UriMinter(const BuildConfig& config) : config_(config) {}

  /// Throws SlugCollision when `unit_id` maps onto a slug already claimed
  /// by another unit id.
  std::string mint(ResourceKind kind, std::string_view unit_id,
                   std::optional<std::size_t> ordinal = std::nullopt);

 private:
  const BuildConfig& config_;
  std::map<std::string, std::string> owners_;
};

std::string ead_export_uri(const BuildConfig& config, std::string_view unit_id);

/// Display label of a level ("documento" for Item in Italian).
std::string level_label(ArchivalLevel level, const std::string& language);

/// Label/value pairs for the `metadata` property: titolo, data, id,
/// livello, holding institution, then descriptive pairs in source order,
/// then one pair per access-term category.
std::vector<MetadataEntry> metadata_pairs(const ArchivalUnit& unit, const std::string& language);

/// Item Manifest: one Canvas per asset, in inventory order. Returns nullopt
/// for an item without media in lenient mode when no placeholder is set.
/// Throws MissingMedia (strict mode) or MediaExtentMissing.
std::optional<IiifResource> build_item_manifest(const ArchivalUnit& item, const BuildConfig& config);

/// File Manifest: the first Canvas of each media-bearing item, re-identified
/// under the file Manifest. Throws EmptyFile when no item contributes.
IiifResource build_file_manifest(const ArchivalUnit& file, const std::vector<IiifResource>& item_manifests,
                                 const BuildConfig& config);

/// File Collection: the file Manifest first, then the item Manifests.
IiifResource build_file_collection(const ArchivalUnit& file, const IiifResource& file_manifest,
                                   const std::vector<IiifResource>& item_manifests, const BuildConfig& config);

/// Series / subseries Collection referencing the children's resources.
IiifResource build_unit_collection(const ArchivalUnit& unit, const std::vector<IiifResource>& child_resources,
                                   const BuildConfig& config);

IiifResource build_fonds_collection(const ArchivalUnit& fonds, const std::vector<IiifResource>& series_collections,
                                    const BuildConfig& config);

struct ResourceSet {
  IiifResource root;
  /// Every Collection, Manifest and Canvas built, keyed by id.
  std::map<std::string, IiifResource> by_id;
  /// Collection / Manifest id -> source unit id.
  std::map<std::string, std::string> provenance;
  std::string base_uri;
  std::vector<std::string> warnings;

  std::size_t count(ResourceKind kind) const;
};

/// Bottom-up build: item Manifests, then file Manifests and Collections,
/// then unit Collections up to the fonds. A non-empty inventory is
/// attached first. Throws InvalidTree when validate_tree reports
/// violations; sub-builder errors carry the unit id.
ResourceSet build_all(const ArchivalUnit& tree, const MediaInventory& inventory, const BuildConfig& config);

}  // namespace ead2iiif
