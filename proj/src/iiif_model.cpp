#include "ead2iiif/iiif_model.hpp"

namespace ead2iiif {

LanguageMap language_map(const std::string& language, const std::string& value) {
  return {{language, {value}}};
}

std::string first_value(const LanguageMap& map, const std::string& language) {
  if (auto hit = map.find(language); hit != map.end() && !hit->second.empty()) return hit->second.front();
  for (const auto& [tag, values] : map) {
    if (!values.empty()) return values.front();
  }
  return {};
}

std::string_view to_string(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::Collection: return "Collection";
    case ResourceKind::Manifest: return "Manifest";
    case ResourceKind::Canvas: return "Canvas";
    case ResourceKind::Other: return "Other";
  }
  return "Other";
}

ResourceKind resource_kind_from_string(std::string_view type) {
  if (type == "Collection") return ResourceKind::Collection;
  if (type == "Manifest") return ResourceKind::Manifest;
  if (type == "Canvas") return ResourceKind::Canvas;
  return ResourceKind::Other;
}

std::string_view to_string(BodyKind kind) {
  switch (kind) {
    case BodyKind::Image: return "Image";
    case BodyKind::Video: return "Video";
    case BodyKind::Sound: return "Sound";
  }
  return "Image";
}

std::optional<BodyKind> body_kind_from_string(std::string_view type) {
  for (auto k : {BodyKind::Image, BodyKind::Video, BodyKind::Sound}) {
    if (to_string(k) == type) return k;
  }
  return std::nullopt;
}

IiifResource reference_to(const IiifResource& target) {
  IiifResource ref;
  ref.id = target.id;
  ref.kind = target.kind;
  ref.other_type = target.other_type;
  ref.label = target.label;
  return ref;
}

}  // namespace ead2iiif
