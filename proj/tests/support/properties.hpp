#pragma once

#include <sstream>
#include <string>

#include "ead2iiif/ead_io.hpp"
#include "ead2iiif/iiif_build.hpp"
#include "ead2iiif/iiif_serialize.hpp"

// Cross-module properties shared by the unit suite and the acceptance
// runner. Each check returns an empty string on success, else a reason.
namespace props {

using namespace ead2iiif;

struct ExpectedCounts {
  std::size_t collections = 0;
  std::size_t manifests = 0;
};

inline void tally(const ArchivalUnit& u, ExpectedCounts& c) {
  if (u.level == ArchivalLevel::File) {
    ++c.collections;
    ++c.manifests;
  } else if (u.level == ArchivalLevel::Item) {
    if (!u.media.empty()) ++c.manifests;
  } else {
    ++c.collections;
  }
  for (const auto& child : u.children) tally(child, c);
}

/// #Collections = non-item non-file units + file units;
/// #Manifests = file units + media-bearing items.
inline ExpectedCounts expected_counts(const ArchivalUnit& tree) {
  ExpectedCounts c;
  tally(tree, c);
  return c;
}

inline std::string check_counts(const ArchivalUnit& tree, const ResourceSet& set) {
  auto want = expected_counts(tree);
  std::size_t collections = set.count(ResourceKind::Collection);
  std::size_t manifests = set.count(ResourceKind::Manifest);
  if (collections == want.collections && manifests == want.manifests) return {};
  std::ostringstream out;
  out << "collections " << collections << " (expected " << want.collections << "), manifests " << manifests
      << " (expected " << want.manifests << ")";
  return out.str();
}

/// The resource a parent references for `child`, if any.
inline std::optional<std::string> reference_for(const ArchivalUnit& child, const BuildConfig& config) {
  if (child.level == ArchivalLevel::Item) {
    if (child.media.empty()) return std::nullopt;
    return mint_uri(config, ResourceKind::Manifest, child.unit_id);
  }
  return mint_uri(config, ResourceKind::Collection, child.unit_id);
}

/// Every parent-child edge of the archival tree appears as a reference
/// edge, in sibling order; every reference resolves; a file Collection
/// starts with its file Manifest.
inline std::string check_archival_bond(const ArchivalUnit& unit, const ResourceSet& set, const BuildConfig& config) {
  if (unit.level == ArchivalLevel::Item) return {};
  const std::string id = mint_uri(config, ResourceKind::Collection, unit.unit_id);
  auto found = set.by_id.find(id);
  if (found == set.by_id.end()) return "no Collection for unit '" + unit.unit_id + "'";
  const IiifResource& collection = found->second;

  std::vector<std::string> expected;
  if (unit.level == ArchivalLevel::File) expected.push_back(mint_uri(config, ResourceKind::Manifest, unit.unit_id));
  for (const auto& child : unit.children) {
    if (auto ref = reference_for(child, config)) expected.push_back(*ref);
  }
  std::vector<std::string> actual;
  for (const auto& item : collection.items) actual.push_back(item.id);
  if (actual != expected) {
    std::ostringstream out;
    out << "unit '" << unit.unit_id << "': references [";
    for (const auto& a : actual) out << a << " ";
    out << "] expected [";
    for (const auto& e : expected) out << e << " ";
    out << "]";
    return out.str();
  }
  for (const auto& item : collection.items) {
    auto target = set.by_id.find(item.id);
    if (target == set.by_id.end()) return "dangling reference " + item.id + " in " + id;
    if (target->second.kind != item.kind) return "reference " + item.id + " has the wrong type";
  }
  if (unit.level == ArchivalLevel::File && collection.items.front().kind != ResourceKind::Manifest) {
    return "file Collection " + id + " does not start with its Manifest";
  }
  for (const auto& child : unit.children) {
    if (auto problem = check_archival_bond(child, set, config); !problem.empty()) return problem;
  }
  return {};
}

inline std::string check_round_trip(const EadDocument& doc) {
  std::string xml = emit_ead(doc);
  EadDocument back = parse_ead(xml);
  if (back.root != doc.root) return "parsed tree differs from the emitted one";
  if (back.control_header != doc.control_header) return "control header changed";
  if (emit_ead(back) != xml) return "second emission differs";
  return {};
}

}  // namespace props
