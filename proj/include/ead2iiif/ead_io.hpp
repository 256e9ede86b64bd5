#pragma once

#include <map>
#include <string>
#include <string_view>

#include "ead2iiif/archival_model.hpp"

namespace ead2iiif {

inline constexpr std::string_view kEad3Namespace = "http://ead3.archivists.org/schema/";

struct EadDocument {
  /// Raw bytes of the `<control>...</control>` element, replayed verbatim.
  std::string control_header;
  ArchivalUnit root;
  std::string namespace_uri = std::string(kEad3Namespace);

  bool operator==(const EadDocument&) const = default;
};

/// Maps EAD `@level` values onto the five archival strata.
using LevelMap = std::map<std::string, ArchivalLevel, std::less<>>;

/// fonds/collection, series/recordgrp, subseries/subgrp, file, item.
LevelMap default_level_map();

/// Parses an EAD3 finding aid. `<archdesc>` becomes the root unit and each
/// `<c>` (or numbered `<c01>`..`<c12>`) inside `<dsc>` a child, in
/// document order.
///
/// Throws Error with MalformedXml, WrongNamespace, MissingUnitId or
/// UnmappedLevel. Messages carry the source line.
EadDocument parse_ead(std::string_view xml_text, const LevelMap& levels = default_level_map());

/// Emits EAD3 with 2-space indentation and attributes in alphabetical
/// order. Access terms are grouped Subject, Place, CorporateBody, Person.
/// Throws InvalidTree when the root fails validate_subtree.
std::string emit_ead(const EadDocument& doc);

/// Parses "H+:MM:SS" into seconds. Throws BadDurationFormat.
double parse_duration(std::string_view text);

/// Inverse of parse_duration for whole seconds; hours are zero-padded to two digits.
std::string format_duration(long long seconds);

/// Media inventory in JSON Lines: one asset object per line. Blank lines and
/// lines starting with '#' are skipped.
///
/// Required: unit_id, asset_id, kind (image|video|audio), format, location.
/// Conditional: width_px, height_px (images), duration_s (video, audio; a
/// number of seconds or an "HH:MM:SS" string), thumbnail.
///
/// Throws SchemaViolation (with line number) or MissingRequiredExtent.
MediaInventory parse_media_inventory(std::string_view text);

}  // namespace ead2iiif
