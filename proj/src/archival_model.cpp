#include "ead2iiif/archival_model.hpp"


#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

std::string_view to_string(ArchivalLevel level) {
  switch (level) {
    case ArchivalLevel::Fonds: return "fonds";
    case ArchivalLevel::Series: return "series";
    case ArchivalLevel::Subseries: return "subseries";
    case ArchivalLevel::File: return "file";
    case ArchivalLevel::Item: return "item";
  }
  return "";
}

std::optional<ArchivalLevel> level_from_string(std::string_view name) {
  for (auto level : {ArchivalLevel::Fonds, ArchivalLevel::Series, ArchivalLevel::Subseries,
                     ArchivalLevel::File, ArchivalLevel::Item}) {
    if (to_string(level) == name) return level;
  }
  return std::nullopt;
}

std::string_view to_string(TermCategory category) {
  switch (category) {
    case TermCategory::Subject: return "Subject";
    case TermCategory::Place: return "Place";
    case TermCategory::Person: return "Person";
    case TermCategory::CorporateBody: return "CorporateBody";
  }
  return "";
}

std::string_view interchange_name(TermCategory category) {
  switch (category) {
    case TermCategory::Subject: return "subject";
    case TermCategory::Place: return "place";
    case TermCategory::Person: return "person";
    case TermCategory::CorporateBody: return "corporate";
  }
  return "";
}

std::optional<TermCategory> category_from_interchange(std::string_view name) {
  for (auto c : {TermCategory::Subject, TermCategory::Place, TermCategory::Person,
                 TermCategory::CorporateBody}) {
    if (interchange_name(c) == name) return c;
  }
  return std::nullopt;
}

std::string_view to_string(MediaKind kind) {
  switch (kind) {
    case MediaKind::Image: return "image";
    case MediaKind::Video: return "video";
    case MediaKind::Audio: return "audio";
  }
  return "";
}

std::optional<MediaKind> media_kind_from_string(std::string_view name) {
  for (auto k : {MediaKind::Image, MediaKind::Video, MediaKind::Audio}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::set<std::string> default_term_sources() {
  return {"nuovo soggettario", "viaf"};
}

std::vector<std::string> media_asset_problems(const MediaAsset& asset) {
  std::vector<std::string> problems;
  if (asset.kind == MediaKind::Image && (!asset.width || !asset.height)) {
    problems.push_back("image asset '" + asset.asset_id + "' needs width and height");
  }
  if (asset.kind != MediaKind::Image && !asset.duration) {
    problems.push_back(std::string(to_string(asset.kind)) + " asset '" + asset.asset_id +
                       "' needs a duration");
  }
  if (asset.duration && !(*asset.duration > 0.0)) {
    problems.push_back("asset '" + asset.asset_id + "' has a non-positive duration");
  }
  return problems;
}

namespace {

class TreeChecker {
 public:
  explicit TreeChecker(const std::set<std::string>& sources) : sources_(sources) {}

  void check(const ArchivalUnit& unit) {
    auto add = [&](std::string_view rule_code, std::string message) {
      violations_.push_back({unit.unit_id, std::string(rule_code), std::move(message)});
    };

    if (unit.unit_id.empty()) {
      add(rule::EmptyUnitId, "unit '" + unit.title + "' has an empty unit_id");
    } else if (!seen_.insert(unit.unit_id).second) {
      add(rule::DuplicateUnitId, "unit_id '" + unit.unit_id + "' occurs more than once");
    }

    if (unit.extent && unit.extent->quantity == 0) {
      add(rule::ExtentQuantity, "extent quantity must be positive");
    }

    if (unit.level == ArchivalLevel::Item) {
      if (!unit.children.empty()) {
        add(rule::ItemHasChildren, "item-level unit has " +
                                       std::to_string(unit.children.size()) + " children");
      }
      for (const auto& asset : unit.media) {
        for (auto& problem : media_asset_problems(asset)) add(rule::MediaExtent, problem);
      }
    } else if (!unit.media.empty()) {
      add(rule::MediaOnNonItem, std::string(to_string(unit.level)) + " unit carries media");
    }

    for (const auto& term : unit.access_terms) {
      if (term.identifier && !text::is_absolute_uri(*term.identifier)) {
        add(rule::TermIdentifier, "access term '" + term.part + "' has a relative identifier '" +
                                      *term.identifier + "'");
      }
      if ((term.identifier || term.normal_form) && (!term.source || !sources_.contains(*term.source))) {
        add(rule::TermSource, "normalized access term '" + term.part +
                                  "' names an unknown thesaurus '" + term.source.value_or("") + "'");
      }
    }

    for (std::size_t i = 0; i < unit.children.size(); ++i) {
      const auto& child = unit.children[i];
      if (child.source_order != static_cast<int>(i)) {
        violations_.push_back({child.unit_id, std::string(rule::SourceOrder),
                               "child at position " + std::to_string(i) + " has source_order " +
                                   std::to_string(child.source_order)});
      }
      if (!is_deeper(child.level, unit.level)) {
        violations_.push_back({child.unit_id, std::string(rule::NestingViolation),
                               std::string(to_string(child.level)) + " unit nested under " +
                                   std::string(to_string(unit.level)) + " '" + unit.unit_id + "'"});
      }
    }
    for (const auto& child : unit.children) check(child);
  }

  std::vector<Violation> take() { return std::move(violations_); }

 private:
  const std::set<std::string>& sources_;
  std::set<std::string> seen_;
  std::vector<Violation> violations_;
};

template <typename Unit>
Unit* find_impl(Unit& unit, std::string_view unit_id) {
  if (unit.unit_id == unit_id) return &unit;
  for (auto& child : unit.children) {
    if (auto* hit = find_impl(child, unit_id)) return hit;
  }
  return nullptr;
}

}  // namespace

std::vector<Violation> validate_subtree(const ArchivalUnit& unit,
                                        const std::set<std::string>& term_sources) {
  TreeChecker checker(term_sources);
  checker.check(unit);
  return checker.take();
}

std::vector<Violation> validate_tree(const ArchivalUnit& tree,
                                     const std::set<std::string>& term_sources) {
  std::vector<Violation> violations;
  if (tree.level != ArchivalLevel::Fonds) {
    violations.push_back({tree.unit_id, std::string(rule::RootNotFonds),
                          "root unit is " + std::string(to_string(tree.level)) + ", not fonds"});
  }
  auto rest = validate_subtree(tree, term_sources);
  violations.insert(violations.end(), rest.begin(), rest.end());
  return violations;
}

const ArchivalUnit* find_unit(const ArchivalUnit& tree, std::string_view unit_id) {
  return find_impl(tree, unit_id);
}

ArchivalUnit* find_unit(ArchivalUnit& tree, std::string_view unit_id) {
  return find_impl(tree, unit_id);
}

AttachResult attach_media(ArchivalUnit tree, const MediaInventory& inventory) {
  AttachResult result;
  for (const auto& [unit_id, assets] : inventory) {
    ArchivalUnit* unit = find_unit(tree, unit_id);
    if (unit == nullptr) {
      result.warnings.push_back("inventory references unknown unit '" + unit_id + "'");
      continue;
    }
    if (unit->level != ArchivalLevel::Item) {
      throw Error(ErrorCode::InventoryOnNonItem,
                  "inventory key '" + unit_id + "' resolves to a " +
                      std::string(to_string(unit->level)) + " unit; media attach to items only");
    }
    unit->media = assets;
  }
  result.tree = std::move(tree);
  return result;
}

std::size_t count_units(const ArchivalUnit& tree) {
  std::size_t n = 1;
  for (const auto& child : tree.children) n += count_units(child);
  return n;
}

}  // namespace ead2iiif
