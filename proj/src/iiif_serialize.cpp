#include "ead2iiif/iiif_serialize.hpp"

#include <cmath>

#include <json.hpp>

#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

namespace {

using Json = nlohmann::ordered_json;

Json language_map_json(const LanguageMap& map) {
  Json out = Json::object();
  for (const auto& [tag, values] : map) out[tag] = values;
  return out;
}

Json number_json(double value) {
  double whole = 0;
  if (std::modf(value, &whole) == 0.0 && std::abs(whole) < 9e15) return static_cast<long long>(whole);
  return value;
}

std::string_view thumbnail_type(const std::string& location) {
  auto media = text::media_type_for_extension(location);
  if (media && media->starts_with("video/")) return "Video";
  if (media && media->starts_with("audio/")) return "Sound";
  return "Image";
}

std::string type_name(const IiifResource& r) {
  return r.kind == ResourceKind::Other ? r.other_type : std::string(to_string(r.kind));
}

Json reference_json(const IiifResource& r) {
  Json out;
  out["id"] = r.id;
  out["type"] = type_name(r);
  out["label"] = language_map_json(r.label);
  return out;
}

void put_extent(Json& out, std::optional<unsigned> width, std::optional<unsigned> height,
                std::optional<double> duration) {
  if (width) out["width"] = *width;
  if (height) out["height"] = *height;
  if (duration) out["duration"] = number_json(*duration);
}

Json annotation_page_json(const IiifResource& canvas) {
  const PaintedBody& body = *canvas.content;
  Json body_json;
  body_json["id"] = body.location;
  body_json["type"] = std::string(to_string(body.kind));
  if (!body.format.empty()) body_json["format"] = body.format;
  put_extent(body_json, body.width, body.height, body.duration);

  Json annotation;
  annotation["id"] = canvas.id + "/page/0/annotation/0";
  annotation["type"] = "Annotation";
  annotation["motivation"] = "painting";
  annotation["body"] = std::move(body_json);
  annotation["target"] = canvas.id;

  Json page;
  page["id"] = canvas.id + "/page/0";
  page["type"] = "AnnotationPage";
  page["items"] = Json::array({std::move(annotation)});
  return page;
}

Json resource_json(const IiifResource& r, bool top_level) {
  Json out;
  if (top_level) out["@context"] = std::string(kPresentation3Context);
  out["id"] = r.id;
  out["type"] = type_name(r);
  out["label"] = language_map_json(r.label);

  if (!r.metadata.empty()) {
    Json metadata = Json::array();
    for (const auto& entry : r.metadata) {
      metadata.push_back(Json{{"label", language_map_json(entry.label)}, {"value", language_map_json(entry.value)}});
    }
    out["metadata"] = std::move(metadata);
  }
  if (r.homepage) {
    Json page;
    page["id"] = r.homepage->id;
    page["type"] = "Text";
    page["label"] = language_map_json(r.homepage->label);
    page["format"] = "text/html";
    out["homepage"] = Json::array({std::move(page)});
  }
  if (!r.see_also.empty()) {
    Json links = Json::array();
    for (const auto& link : r.see_also) {
      Json entry;
      entry["id"] = link.id;
      entry["type"] = link.kind;
      if (!link.label.empty()) entry["label"] = language_map_json(link.label);
      if (!link.format.empty()) entry["format"] = link.format;
      links.push_back(std::move(entry));
    }
    out["seeAlso"] = std::move(links);
  }

  switch (r.kind) {
    case ResourceKind::Collection: {
      Json items = Json::array();
      for (const auto& item : r.items) items.push_back(reference_json(item));
      out["items"] = std::move(items);
      break;
    }
    case ResourceKind::Manifest: {
      Json items = Json::array();
      for (const auto& canvas : r.items) items.push_back(resource_json(canvas, false));
      out["items"] = std::move(items);
      break;
    }
    case ResourceKind::Canvas:
      out["items"] = r.content ? Json::array({annotation_page_json(r)}) : Json::array();
      break;
    case ResourceKind::Other: break;
  }

  put_extent(out, r.width, r.height, r.duration);
  if (r.thumbnail) {
    Json thumb;
    thumb["id"] = *r.thumbnail;
    thumb["type"] = std::string(thumbnail_type(*r.thumbnail));
    if (auto media = text::media_type_for_extension(*r.thumbnail)) thumb["format"] = *media;
    out["thumbnail"] = Json::array({std::move(thumb)});
  }
  return out;
}

// ---- reading back ----

std::string string_field(const Json& j, const char* key) {
  auto it = j.find(key);
  return it != j.end() && it->is_string() ? it->get<std::string>() : std::string();
}

LanguageMap read_language_map(const Json& j) {
  LanguageMap map;
  if (!j.is_object()) return map;
  for (const auto& [tag, values] : j.items()) {
    auto& slot = map[tag];
    if (values.is_string()) {
      slot.push_back(values.get<std::string>());
    } else if (values.is_array()) {
      for (const auto& v : values) {
        if (v.is_string()) slot.push_back(v.get<std::string>());
      }
    }
  }
  return map;
}

std::optional<unsigned> read_unsigned(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number() || it->get<double>() < 0) return std::nullopt;
  return static_cast<unsigned>(it->get<double>());
}

std::optional<double> read_double(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_number()) return std::nullopt;
  return it->get<double>();
}

const Json* first_element(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array() || it->empty() || !it->front().is_object()) return nullptr;
  return &it->front();
}

IiifResource read_resource(const Json& j) {
  IiifResource r;
  r.id = string_field(j, "id");
  std::string type = string_field(j, "type");
  r.kind = resource_kind_from_string(type);
  if (r.kind == ResourceKind::Other) r.other_type = type;
  if (auto it = j.find("label"); it != j.end()) r.label = read_language_map(*it);

  if (auto it = j.find("metadata"); it != j.end() && it->is_array()) {
    for (const auto& entry : *it) {
      if (!entry.is_object()) continue;
      r.metadata.push_back({read_language_map(entry.value("label", Json::object())),
                            read_language_map(entry.value("value", Json::object()))});
    }
  }
  if (const Json* page = first_element(j, "homepage")) {
    r.homepage = Homepage{string_field(*page, "id"), read_language_map(page->value("label", Json::object()))};
  }
  if (auto it = j.find("seeAlso"); it != j.end() && it->is_array()) {
    for (const auto& link : *it) {
      if (!link.is_object()) continue;
      r.see_also.push_back(SeeAlso{string_field(link, "id"), string_field(link, "type"), string_field(link, "format"),
                                   read_language_map(link.value("label", Json::object()))});
    }
  }

  if (r.kind == ResourceKind::Canvas) {
    const Json* page = first_element(j, "items");
    const Json* annotation = page ? first_element(*page, "items") : nullptr;
    if (annotation) {
      if (auto body = annotation->find("body"); body != annotation->end() && body->is_object()) {
        PaintedBody content;
        content.location = string_field(*body, "id");
        content.kind = body_kind_from_string(string_field(*body, "type")).value_or(BodyKind::Image);
        content.format = string_field(*body, "format");
        content.width = read_unsigned(*body, "width");
        content.height = read_unsigned(*body, "height");
        content.duration = read_double(*body, "duration");
        r.content = std::move(content);
      }
    }
  } else if (auto it = j.find("items"); it != j.end() && it->is_array()) {
    for (const auto& item : *it) {
      if (item.is_object()) r.items.push_back(read_resource(item));
    }
  }

  r.width = read_unsigned(j, "width");
  r.height = read_unsigned(j, "height");
  r.duration = read_double(j, "duration");
  if (const Json* thumb = first_element(j, "thumbnail")) r.thumbnail = string_field(*thumb, "id");
  return r;
}

}  // namespace

std::string serialize(const IiifResource& resource) {
  auto issues = validate_resource(resource);
  for (const auto& issue : issues) {
    if (issue.severity == Severity::Error) {
      throw Error(ErrorCode::UnserializableResource,
                  issue.resource_id + ": " + issue.rule + ": " + issue.message);
    }
  }
  try {
    return resource_json(resource, true).dump(2) + "\n";
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::UnserializableResource, resource.id + ": " + e.what());
  }
}

IiifResource parse_resource(std::string_view json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::UnreadableInput, std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::UnreadableInput, "top-level JSON value is not an object");
  return read_resource(j);
}

}  // namespace ead2iiif
