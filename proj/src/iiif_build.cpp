#include "ead2iiif/iiif_build.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

namespace {

// Display vocabulary. Italian is the default; any other language falls
// back to English labels tagged "en".
struct Vocabulary {
  std::string language;
  const char* title;
  const char* date;
  const char* id;
  const char* level;
  const char* repository;
  const char* subjects;
  const char* places;
  const char* persons;
  const char* corporate_bodies;
  const char* ead_link;
  const char* homepage;
  std::array<const char*, 5> levels;
};

Vocabulary vocabulary(const std::string& language) {
  if (language == "it") {
    return {"it", "titolo", "data", "id", "livello", "istituto conservatore", "soggetti", "luoghi",
            "persone", "enti", "Descrizione archivistica in EAD", "Pagina web della risorsa",
            {"fondo", "serie", "sottoserie", "fascicolo", "documento"}};
  }
  return {"en", "title", "date", "id", "level", "holding institution", "subjects", "places",
          "persons", "corporate bodies", "Archival description in EAD", "Resource web page",
          {"fonds", "series", "subseries", "file", "item"}};
}

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  for (auto pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
  return s;
}

std::string display_title(const ArchivalUnit& unit) {
  return unit.title.empty() ? unit.unit_id : unit.title;
}

std::string resolve_location(const BuildConfig& config, const std::string& location) {
  if (text::is_absolute_uri(location)) return location;
  std::string_view relative(location);
  while (relative.starts_with("./")) relative.remove_prefix(2);
  return config.base_uri + "/media/" + std::string(relative);
}

// Fields shared by every Collection and Manifest describing `unit`.
IiifResource described_resource(const ArchivalUnit& unit, ResourceKind kind, const BuildConfig& config) {
  const auto vocab = vocabulary(config.default_language);
  IiifResource resource;
  resource.kind = kind;
  resource.id = mint_uri(config, kind, unit.unit_id);
  resource.label = language_map(config.default_language, display_title(unit));
  resource.metadata = metadata_pairs(unit, config.default_language);
  if (config.institution_homepage) {
    resource.homepage = Homepage{*config.institution_homepage,
                                 language_map(vocab.language, config.homepage_label.value_or(vocab.homepage))};
  }
  resource.see_also.push_back(SeeAlso{ead_export_uri(config, unit.unit_id), "Dataset", "text/xml",
                                      language_map(vocab.language, vocab.ead_link)});
  return resource;
}

// Bare canvas shell; body and extent are filled by the caller.
IiifResource make_canvas(std::string id, LanguageMap label) {
  IiifResource canvas;
  canvas.kind = ResourceKind::Canvas;
  canvas.id = std::move(id);
  canvas.label = std::move(label);
  return canvas;
}

IiifResource asset_canvas(const MediaAsset& asset, std::string id, LanguageMap label, const BuildConfig& config) {
  if (!media_asset_problems(asset).empty()) {
    throw Error(ErrorCode::MediaExtentMissing, media_asset_problems(asset).front());
  }
  IiifResource canvas = make_canvas(std::move(id), std::move(label));
  PaintedBody body;
  body.location = resolve_location(config, asset.location);
  body.format = asset.media_format;
  body.kind = asset.kind == MediaKind::Image ? BodyKind::Image
              : asset.kind == MediaKind::Video ? BodyKind::Video
                                               : BodyKind::Sound;
  if (asset.kind != MediaKind::Audio) {
    body.width = asset.width;
    body.height = asset.height;
  }
  if (asset.kind != MediaKind::Image) body.duration = asset.duration;
  canvas.width = body.width;
  canvas.height = body.height;
  canvas.duration = body.duration;
  canvas.content = std::move(body);
  if (asset.thumbnail) canvas.thumbnail = resolve_location(config, *asset.thumbnail);
  return canvas;
}

}  // namespace

void check_build_config(const BuildConfig& config) {
  if (!text::is_absolute_uri(config.base_uri) || config.base_uri.ends_with('/')) {
    throw Error(ErrorCode::InvalidConfig,
                "base_uri must be absolute without a trailing slash: '" + config.base_uri + "'");
  }
  if (!text::is_absolute_uri(ead_export_uri(config, "x"))) {
    throw Error(ErrorCode::InvalidConfig,
                "EAD export pattern does not produce an absolute URI: '" + config.ead_export_uri_pattern + "'");
  }
}

std::string slugify(std::string_view unit_id) {
  std::string slug;
  bool pending_dash = false;
  for (char c : unit_id) {
    auto uc = static_cast<unsigned char>(c);
    if (uc < 0x80 && std::isalnum(uc)) {
      if (pending_dash && !slug.empty()) slug += '-';
      pending_dash = false;
      slug += static_cast<char>(std::tolower(uc));
    } else {
      pending_dash = true;
    }
  }
  return slug;
}

std::string mint_uri(const BuildConfig& config, ResourceKind kind, std::string_view unit_id,
                     std::optional<std::size_t> ordinal) {
  std::string slug = slugify(unit_id);
  if (slug.empty()) {
    throw Error(ErrorCode::SlugCollision, "unit id '" + std::string(unit_id) + "' yields an empty slug");
  }
  switch (kind) {
    case ResourceKind::Collection: return config.base_uri + "/collection/" + slug + ".json";
    case ResourceKind::Manifest: return config.base_uri + "/manifest/" + slug + ".json";
    case ResourceKind::Canvas:
      return config.base_uri + "/manifest/" + slug + "/canvas/" + std::to_string(ordinal.value_or(0));
    case ResourceKind::Other: break;
  }
  throw Error(ErrorCode::InvalidConfig, "cannot mint a URI for resource kind Other");
}

std::string UriMinter::mint(ResourceKind kind, std::string_view unit_id, std::optional<std::size_t> ordinal) {
  std::string uri = mint_uri(config_, kind, unit_id, ordinal);
  auto [owner, inserted] = owners_.emplace(slugify(unit_id), std::string(unit_id));
  if (!inserted && owner->second != unit_id) {
    throw Error(ErrorCode::SlugCollision, "unit ids '" + owner->second + "' and '" + std::string(unit_id) +
                                              "' share the slug '" + owner->first + "'");
  }
  return uri;
}

std::string ead_export_uri(const BuildConfig& config, std::string_view unit_id) {
  return replace_all(replace_all(config.ead_export_uri_pattern, "{base}", config.base_uri), "{slug}",
                     slugify(unit_id));
}

std::string level_label(ArchivalLevel level, const std::string& language) {
  return vocabulary(language).levels[static_cast<std::size_t>(level)];
}

std::vector<MetadataEntry> metadata_pairs(const ArchivalUnit& unit, const std::string& language) {
  const auto vocab = vocabulary(language);
  std::vector<MetadataEntry> pairs;
  auto add = [&](const char* label, LanguageMap value) {
    pairs.push_back({language_map(vocab.language, label), std::move(value)});
  };

  if (!unit.title.empty()) add(vocab.title, language_map(language, unit.title));
  if (!unit.date_display.empty()) add(vocab.date, language_map(language, unit.date_display));
  add(vocab.id, language_map(std::string(kNoLanguage), unit.unit_id));
  add(vocab.level, language_map(vocab.language, level_label(unit.level, language)));
  if (unit.repository && !unit.repository->empty()) add(vocab.repository, language_map(language, *unit.repository));

  for (const auto& pair : unit.descriptive_pairs) {
    pairs.push_back({language_map(language, pair.label), language_map(language, pair.value)});
  }

  const std::pair<TermCategory, const char*> categories[] = {
      {TermCategory::Subject, vocab.subjects},
      {TermCategory::Place, vocab.places},
      {TermCategory::CorporateBody, vocab.corporate_bodies},
      {TermCategory::Person, vocab.persons},
  };
  for (const auto& [category, label] : categories) {
    std::string joined;
    for (const auto& term : unit.access_terms) {
      if (term.category != category) continue;
      if (!joined.empty()) joined += "; ";
      joined += term.part;
    }
    if (!joined.empty()) add(label, language_map(language, joined));
  }
  return pairs;
}

std::optional<IiifResource> build_item_manifest(const ArchivalUnit& item, const BuildConfig& config) {
  if (item.level != ArchivalLevel::Item) {
    throw Error(ErrorCode::InvalidTree, "unit '" + item.unit_id + "' is not an item");
  }
  IiifResource manifest = described_resource(item, ResourceKind::Manifest, config);
  const std::string title = display_title(item);

  if (item.media.empty()) {
    if (config.strict_media) {
      throw Error(ErrorCode::MissingMedia, "item '" + item.unit_id + "' has no digitized media");
    }
    if (!config.placeholder) return std::nullopt;
    IiifResource canvas = make_canvas(mint_uri(config, ResourceKind::Canvas, item.unit_id, 0),
                                      language_map(config.default_language, title));
    const auto& placeholder = *config.placeholder;
    canvas.width = placeholder.width;
    canvas.height = placeholder.height;
    canvas.content = PaintedBody{resolve_location(config, placeholder.location), BodyKind::Image,
                                 placeholder.format, placeholder.width, placeholder.height, std::nullopt};
    manifest.items.push_back(std::move(canvas));
    return manifest;
  }

  for (std::size_t i = 0; i < item.media.size(); ++i) {
    std::string label = item.media.size() == 1 ? title : title + " (" + std::to_string(i + 1) + ")";
    manifest.items.push_back(asset_canvas(item.media[i], mint_uri(config, ResourceKind::Canvas, item.unit_id, i),
                                          language_map(config.default_language, label), config));
  }
  return manifest;
}

IiifResource build_file_manifest(const ArchivalUnit& file, const std::vector<IiifResource>& item_manifests,
                                 const BuildConfig& config) {
  IiifResource manifest = described_resource(file, ResourceKind::Manifest, config);
  for (const auto& child : file.children) {
    if (child.media.empty()) continue;
    const std::string child_id = mint_uri(config, ResourceKind::Manifest, child.unit_id);
    auto item = std::find_if(item_manifests.begin(), item_manifests.end(),
                             [&](const IiifResource& m) { return m.id == child_id; });
    if (item == item_manifests.end() || item->items.empty()) continue;

    IiifResource canvas = item->items.front();
    canvas.id = mint_uri(config, ResourceKind::Canvas, file.unit_id, manifest.items.size());
    canvas.label = language_map(config.default_language, display_title(child));
    manifest.items.push_back(std::move(canvas));
  }
  if (manifest.items.empty()) {
    throw Error(ErrorCode::EmptyFile, "file '" + file.unit_id + "' has no item with digitized media");
  }
  return manifest;
}

IiifResource build_file_collection(const ArchivalUnit& file, const IiifResource& file_manifest,
                                   const std::vector<IiifResource>& item_manifests, const BuildConfig& config) {
  IiifResource collection = described_resource(file, ResourceKind::Collection, config);
  collection.metadata = file_manifest.metadata;
  collection.items.push_back(reference_to(file_manifest));
  for (const auto& manifest : item_manifests) collection.items.push_back(reference_to(manifest));
  return collection;
}

IiifResource build_unit_collection(const ArchivalUnit& unit, const std::vector<IiifResource>& child_resources,
                                   const BuildConfig& config) {
  IiifResource collection = described_resource(unit, ResourceKind::Collection, config);
  for (const auto& child : child_resources) collection.items.push_back(reference_to(child));
  return collection;
}

IiifResource build_fonds_collection(const ArchivalUnit& fonds, const std::vector<IiifResource>& series_collections,
                                    const BuildConfig& config) {
  if (fonds.level != ArchivalLevel::Fonds) {
    throw Error(ErrorCode::InvalidTree, "unit '" + fonds.unit_id + "' is not a fonds");
  }
  return build_unit_collection(fonds, series_collections, config);
}

std::size_t ResourceSet::count(ResourceKind kind) const {
  return static_cast<std::size_t>(std::count_if(by_id.begin(), by_id.end(),
                                                [&](const auto& entry) { return entry.second.kind == kind; }));
}

namespace {

class SetBuilder {
 public:
  SetBuilder(const BuildConfig& config, ResourceSet& set) : config_(config), set_(set) {}

  // Builds the unit's resources and returns the one its parent references.
  std::optional<IiifResource> build(const ArchivalUnit& unit) {
    try {
      switch (unit.level) {
        case ArchivalLevel::Item: return build_item(unit);
        case ArchivalLevel::File: return build_file(unit);
        default: return build_aggregate(unit);
      }
    } catch (const Error& e) {
      if (annotated_) throw;
      annotated_ = true;
      throw e.with_context("unit '" + unit.unit_id + "'");
    }
  }

 private:
  std::optional<IiifResource> build_item(const ArchivalUnit& item) {
    auto manifest = build_item_manifest(item, config_);
    if (!manifest) {
      set_.warnings.push_back("item '" + item.unit_id + "' has no media and was left out");
      return std::nullopt;
    }
    add(*manifest, item.unit_id);
    return manifest;
  }

  std::optional<IiifResource> build_file(const ArchivalUnit& file) {
    std::vector<IiifResource> item_manifests;
    for (const auto& child : file.children) {
      if (auto manifest = build(child)) item_manifests.push_back(std::move(*manifest));
    }
    IiifResource file_manifest = build_file_manifest(file, item_manifests, config_);
    IiifResource collection = build_file_collection(file, file_manifest, item_manifests, config_);
    add(file_manifest, file.unit_id);
    add(collection, file.unit_id);
    return collection;
  }

  std::optional<IiifResource> build_aggregate(const ArchivalUnit& unit) {
    std::vector<IiifResource> children;
    for (const auto& child : unit.children) {
      if (auto resource = build(child)) children.push_back(std::move(*resource));
    }
    IiifResource collection = unit.level == ArchivalLevel::Fonds
                                  ? build_fonds_collection(unit, children, config_)
                                  : build_unit_collection(unit, children, config_);
    add(collection, unit.unit_id);
    return collection;
  }

  void add(const IiifResource& resource, const std::string& unit_id) {
    set_.provenance[resource.id] = unit_id;
    for (const auto& canvas : resource.kind == ResourceKind::Manifest ? resource.items
                                                                       : std::vector<IiifResource>{}) {
      set_.by_id[canvas.id] = canvas;
    }
    set_.by_id[resource.id] = resource;
  }

  const BuildConfig& config_;
  ResourceSet& set_;
  bool annotated_ = false;
};

void claim_slugs(UriMinter& minter, const ArchivalUnit& unit) {
  try {
    minter.mint(ResourceKind::Collection, unit.unit_id);
  } catch (const Error& e) {
    throw e.with_context("unit '" + unit.unit_id + "'");
  }
  for (const auto& child : unit.children) claim_slugs(minter, child);
}

}  // namespace

ResourceSet build_all(const ArchivalUnit& tree, const MediaInventory& inventory, const BuildConfig& config) {
  check_build_config(config);

  ResourceSet set;
  set.base_uri = config.base_uri;
  const ArchivalUnit* source = &tree;
  AttachResult attached;
  if (!inventory.empty()) {
    attached = attach_media(tree, inventory);
    set.warnings = attached.warnings;
    source = &attached.tree;
  }

  auto violations = validate_tree(*source);
  if (!violations.empty()) {
    std::string message = std::to_string(violations.size()) + " integrity violation(s); first: unit '" +
                          violations.front().unit_id + "' " + violations.front().rule + ": " +
                          violations.front().message;
    throw Error(ErrorCode::InvalidTree, message);
  }

  UriMinter minter(config);
  claim_slugs(minter, *source);

  SetBuilder builder(config, set);
  set.root = *builder.build(*source);
  return set;
}

}  // namespace ead2iiif
