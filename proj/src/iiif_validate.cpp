#include <algorithm>
#include <set>

#include "ead2iiif/iiif_serialize.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

std::string_view to_string(Severity severity) {
  return severity == Severity::Error ? "Error" : "Warning";
}

std::size_t count_errors(const std::vector<ValidationIssue>& issues) {
  return static_cast<std::size_t>(std::count_if(issues.begin(), issues.end(), [](const ValidationIssue& i) {
    return i.severity == Severity::Error;
  }));
}

namespace {

bool has_label(const LanguageMap& label) {
  return std::any_of(label.begin(), label.end(), [](const auto& entry) {
    return std::any_of(entry.second.begin(), entry.second.end(), [](const std::string& v) { return !v.empty(); });
  });
}

class Checker {
 public:
  std::vector<ValidationIssue> run(const IiifResource& resource) {
    check_identity(resource);
    switch (resource.kind) {
      case ResourceKind::Collection: check_collection(resource); break;
      case ResourceKind::Manifest: check_manifest(resource); break;
      case ResourceKind::Canvas: check_canvas(resource); break;
      case ResourceKind::Other:
        error(resource.id, check::UnknownType, "unsupported type '" + resource.other_type + "'");
        break;
    }
    return std::move(issues_);
  }

 private:
  void error(const std::string& id, std::string_view rule, std::string message) {
    issues_.push_back({id, Severity::Error, std::string(rule), std::move(message)});
  }
  void warning(const std::string& id, std::string_view rule, std::string message) {
    issues_.push_back({id, Severity::Warning, std::string(rule), std::move(message)});
  }

  void check_identity(const IiifResource& r) {
    if (r.id.empty()) {
      error(r.id, check::MissingId, "resource has no id");
    } else if (!text::is_absolute_uri(r.id)) {
      error(r.id, check::RelativeId, "id '" + r.id + "' is not an absolute URI");
    }
    if (!r.id.empty() && !seen_.insert(r.id).second) {
      error(r.id, check::DuplicateId, "id '" + r.id + "' occurs more than once");
    }
  }

  void check_described(const IiifResource& r) {
    if (!has_label(r.label)) error(r.id, check::MissingLabel, "label is missing or empty");
    if (r.metadata.empty()) warning(r.id, check::EmptyMetadata, "no metadata pairs");
    if (r.see_also.empty()) warning(r.id, check::MissingSeeAlso, "no seeAlso link to an archival description");
  }

  void check_collection(const IiifResource& r) {
    check_described(r);
    if (r.items.empty()) warning(r.id, check::CollectionEmpty, "collection has no items");
    for (const auto& item : r.items) {
      if (item.kind != ResourceKind::Collection && item.kind != ResourceKind::Manifest) {
        std::string type = item.kind == ResourceKind::Other ? item.other_type : std::string(to_string(item.kind));
        error(r.id, check::CollectionBadItem, "item '" + item.id + "' has type '" + type + "'");
      }
      if (item.id.empty()) {
        error(r.id, check::MissingId, "collection item without id");
      } else if (!text::is_absolute_uri(item.id)) {
        error(r.id, check::RelativeId, "item id '" + item.id + "' is not an absolute URI");
      }
    }
  }

  void check_manifest(const IiifResource& r) {
    check_described(r);
    std::size_t canvases = 0;
    for (const auto& item : r.items) {
      if (item.kind != ResourceKind::Canvas) {
        error(r.id, check::ManifestBadItem, "item '" + item.id + "' is not a Canvas");
        continue;
      }
      ++canvases;
      check_identity(item);
      check_canvas(item);
    }
    if (canvases == 0) error(r.id, check::ManifestNoCanvas, "manifest has no canvases");
  }

  void check_canvas(const IiifResource& c) {
    const bool spatial = c.width && c.height;
    if (!spatial && !c.duration) {
      error(c.id, check::CanvasNoExtent, "canvas has neither width/height nor duration");
      return;
    }
    if (c.width.has_value() != c.height.has_value()) {
      error(c.id, check::ExtentBodyMismatch, "width and height must be given together");
    }
    if (!c.content) return;
    const PaintedBody& body = *c.content;
    if (body.kind == BodyKind::Image && (!spatial || c.duration)) {
      error(c.id, check::ExtentBodyMismatch, "an Image body needs width/height and no duration");
    }
    if (body.kind == BodyKind::Video && (!spatial || !c.duration)) {
      error(c.id, check::ExtentBodyMismatch, "a Video body needs width/height and duration");
    }
    if (body.kind == BodyKind::Sound && (!c.duration || c.width || c.height)) {
      error(c.id, check::ExtentBodyMismatch, "a Sound body needs duration and no width/height");
    }
    if ((body.width && body.width != c.width) || (body.height && body.height != c.height) ||
        (body.duration && body.duration != c.duration)) {
      error(c.id, check::ExtentBodyMismatch, "body extent differs from canvas extent");
    }
  }

  std::vector<ValidationIssue> issues_;
  std::set<std::string> seen_;
};

}  // namespace

std::vector<ValidationIssue> validate_resource(const IiifResource& resource) {
  return Checker().run(resource);
}

std::vector<ValidationIssue> validate_resources(const std::vector<IiifResource>& resources) {
  std::vector<ValidationIssue> issues;
  std::set<std::string> known;
  for (const auto& r : resources) {
    if (r.kind == ResourceKind::Collection || r.kind == ResourceKind::Manifest) known.insert(r.id);
  }
  for (const auto& r : resources) {
    if (r.kind == ResourceKind::Canvas) continue;
    auto found = validate_resource(r);
    issues.insert(issues.end(), found.begin(), found.end());
    if (r.kind != ResourceKind::Collection) continue;
    for (const auto& item : r.items) {
      if (!item.id.empty() && !known.contains(item.id)) {
        issues.push_back({r.id, Severity::Error, std::string(check::DanglingReference),
                          "item '" + item.id + "' does not resolve to an exported resource"});
      }
    }
  }
  return issues;
}

std::vector<ValidationIssue> validate_set(const ResourceSet& set) {
  std::vector<IiifResource> resources;
  resources.reserve(set.by_id.size());
  for (const auto& [id, resource] : set.by_id) resources.push_back(resource);
  return validate_resources(resources);
}

}  // namespace ead2iiif
