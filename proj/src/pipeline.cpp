#include <algorithm>
#include <csignal>
#include <ostream>
#include <pthread.h>
#include <set>

#include <json.hpp>

#include "ead2iiif/cli.hpp"
#include "ead2iiif/ead_io.hpp"
#include "ead2iiif/enrichment.hpp"
#include "ead2iiif/iiif_serialize.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

namespace {

namespace fs = std::filesystem;
using Json = nlohmann::json;

class ConfigReader {
 public:
  ConfigReader(const Json& j, fs::path base) : j_(j), base_(std::move(base)) {}

  std::optional<std::string> string(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) fail(key, "a string");
    return it->get<std::string>();
  }

  std::optional<fs::path> path(const char* key) {
    auto value = string(key);
    if (!value) return std::nullopt;
    fs::path p(*value);
    return p.is_absolute() ? p : base_ / p;
  }

  std::optional<bool> boolean(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    if (!it->is_boolean()) fail(key, "a boolean");
    return it->get<bool>();
  }

  std::optional<unsigned> count(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_unsigned() || it->get<unsigned long long>() == 0) fail(key, "a positive integer");
    return static_cast<unsigned>(it->get<unsigned long long>());
  }

  const Json* object(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    if (!it->is_object()) fail(key, "an object");
    return &*it;
  }

  void reject_unknown(std::string_view where) const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) {
        throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "' in " + std::string(where));
      }
    }
  }

 private:
  [[noreturn]] void fail(const char* key, const char* expected) const {
    throw Error(ErrorCode::InvalidConfig, std::string("'") + key + "' must be " + expected);
  }

  const Json& j_;
  fs::path base_;
  std::set<std::string, std::less<>> seen_;
};

struct Inputs {
  EadDocument ead;
  MediaInventory inventory;
};

Inputs read_inputs(const ProjectConfig& config) {
  Inputs inputs;
  try {
    inputs.ead = parse_ead(text::read_file(config.ead_path));
  } catch (const Error& e) {
    throw e.with_context(config.ead_path.string());
  }
  if (config.inventory_path) {
    try {
      inputs.inventory = parse_media_inventory(text::read_file(*config.inventory_path));
    } catch (const Error& e) {
      throw e.with_context(config.inventory_path->string());
    }
  }
  return inputs;
}

std::vector<std::shared_ptr<const AuthorityResolver>> make_resolvers(const ProjectConfig& config) {
  std::vector<std::shared_ptr<const AuthorityResolver>> resolvers;
  if (config.snapshot_path) {
    try {
      for (auto& resolver : SnapshotResolver::load_file(*config.snapshot_path)) resolvers.push_back(resolver);
    } catch (const Error& e) {
      throw e.with_context(config.snapshot_path->string());
    }
  }
  if (config.viaf_endpoint) {
    ViafConfig viaf;
    viaf.endpoint = *config.viaf_endpoint;
    viaf.cache_dir = config.viaf_cache_dir;
    resolvers.push_back(std::make_shared<ViafResolver>(viaf));
  }
  return resolvers;
}

// Normalizes every term list under termlist_dir and merges the results
// into the matching units of `ead`.
void enrich(const ProjectConfig& config, EadDocument& ead, std::ostream& err) {
  if (!config.termlist_dir) {
    throw Error(ErrorCode::InvalidConfig, "enrichment requested but termlist_dir is not set");
  }
  std::error_code ec;
  if (!fs::is_directory(*config.termlist_dir, ec)) {
    throw Error(ErrorCode::UnreadableInput, "term list directory " + config.termlist_dir->string() + " not found");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(*config.termlist_dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  auto resolvers = make_resolvers(config);
  NormalizeOptions options;
  options.strict = config.strict_enrichment;
  for (const auto& file : files) {
    try {
      TermList list = parse_term_list(text::read_file(file));
      ArchivalUnit* unit = find_unit(ead.root, list.unit_id);
      if (!unit) {
        err << "warning: " << file.string() << ": no unit '" << list.unit_id << "' in the finding aid\n";
        continue;
      }
      auto result = normalize_terms(list, resolvers, options);
      for (const auto& warning : result.warnings) err << "warning: " << file.string() << ": " << warning << "\n";
      *unit = merge_control_access(std::move(*unit), result.terms);
    } catch (const Error& e) {
      throw e.with_context(file.string());
    }
  }
}

void print_issues(const std::vector<ValidationIssue>& issues, std::ostream& err) {
  for (const auto& issue : issues) {
    err << (issue.severity == Severity::Error ? "error" : "warning") << ": " << issue.rule << " "
        << issue.resource_id << ": " << issue.message << "\n";
  }
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

void collect_units(const ArchivalUnit& unit, std::vector<const ArchivalUnit*>& out) {
  out.push_back(&unit);
  for (const auto& child : unit.children) collect_units(child, out);
}

}  // namespace

ProjectConfig load_project_config(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(text::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, path.string() + ": " + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, path.string() + ": top level must be an object");

  ProjectConfig config;
  try {
    ConfigReader r(j, path.parent_path());
    if (auto p = r.path("ead_path")) config.ead_path = *p;
    config.inventory_path = r.path("inventory_path");
    config.termlist_dir = r.path("termlist_dir");
    config.snapshot_path = r.path("snapshot_path");
    config.viaf_endpoint = r.string("viaf_endpoint");
    config.viaf_cache_dir = r.path("viaf_cache_dir");
    if (auto p = r.path("out_dir")) config.out_dir = *p;
    if (auto b = r.boolean("strict_enrichment")) config.strict_enrichment = *b;
    if (auto s = r.string("base_uri")) config.build.base_uri = *s;
    if (auto s = r.string("default_language")) config.build.default_language = *s;
    if (auto s = r.string("ead_export_uri_pattern")) config.build.ead_export_uri_pattern = *s;
    config.build.institution_homepage = r.string("institution_homepage");
    config.build.homepage_label = r.string("homepage_label");
    if (auto b = r.boolean("strict_media")) config.build.strict_media = *b;
    if (const Json* placeholder = r.object("placeholder")) {
      ConfigReader p(*placeholder, path.parent_path());
      PlaceholderImage image;
      image.location = p.string("location").value_or("");
      if (image.location.empty()) throw Error(ErrorCode::InvalidConfig, "placeholder.location is required");
      if (auto s = p.string("format")) image.format = *s;
      if (auto n = p.count("width")) image.width = *n;
      if (auto n = p.count("height")) image.height = *n;
      p.reject_unknown("placeholder");
      config.build.placeholder = image;
    }
    r.reject_unknown("project file");
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
  return config;
}

void check_project_config(const ProjectConfig& config) {
  if (config.ead_path.empty()) throw Error(ErrorCode::InvalidConfig, "ead_path is required");
  std::error_code ec;
  if (!fs::is_regular_file(config.ead_path, ec)) {
    throw Error(ErrorCode::UnreadableInput, "finding aid " + config.ead_path.string() + " not found");
  }
  if (config.inventory_path && !fs::is_regular_file(*config.inventory_path, ec)) {
    throw Error(ErrorCode::UnreadableInput, "inventory " + config.inventory_path->string() + " not found");
  }
  if (config.viaf_endpoint && !text::is_http_uri(*config.viaf_endpoint)) {
    throw Error(ErrorCode::InvalidConfig, "viaf_endpoint must be an http(s) URI");
  }
  check_build_config(config.build);
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidTree:
    case ErrorCode::SlugCollision:
    case ErrorCode::MissingMedia:
    case ErrorCode::MediaExtentMissing:
    case ErrorCode::EmptyFile:
    case ErrorCode::UnserializableResource:
      return 1;
    default:
      return 2;
  }
}

int cmd_build(const ProjectConfig& config, const BuildOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_project_config(config);
    Inputs inputs = read_inputs(config);
    if (options.enrich) enrich(config, inputs.ead, err);

    ResourceSet set = build_all(inputs.ead.root, inputs.inventory, config.build);
    for (const auto& warning : set.warnings) err << "warning: " << warning << "\n";

    auto issues = validate_set(set);
    print_issues(issues, err);
    if (count_errors(issues) > 0) {
      err << "error: " << count_errors(issues) << " validation error(s); nothing written\n";
      return 1;
    }

    auto written = write_site(set, inputs.ead, config.out_dir);
    out << "collections: " << set.count(ResourceKind::Collection) << "\n"
        << "manifests: " << set.count(ResourceKind::Manifest) << "\n"
        << "canvases: " << set.count(ResourceKind::Canvas) << "\n"
        << "warnings: " << set.warnings.size() + issues.size() << "\n"
        << "files written: " << written.size() << " under " << config.out_dir.string() << "\n";
    return 0;
  });
}

int cmd_validate(const fs::path& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::error_code ec;
    std::vector<fs::path> files;
    if (fs::is_directory(path, ec)) {
      for (const auto& entry : fs::recursive_directory_iterator(path)) {
        if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      if (files.empty()) throw Error(ErrorCode::UnreadableInput, "no JSON-LD files under " + path.string());
    } else if (fs::is_regular_file(path, ec)) {
      files.push_back(path);
    } else {
      throw Error(ErrorCode::UnreadableInput, path.string() + " does not exist");
    }

    std::vector<IiifResource> resources;
    for (const auto& file : files) {
      try {
        resources.push_back(parse_resource(text::read_file(file)));
      } catch (const Error& e) {
        throw e.with_context(file.string());
      }
    }
    auto issues = files.size() == 1 ? validate_resource(resources.front()) : validate_resources(resources);
    print_issues(issues, err);
    std::size_t errors = count_errors(issues);
    out << files.size() << " resource(s), " << errors << " error(s), " << issues.size() - errors
        << " warning(s)\n";
    return errors == 0 ? 0 : 1;
  });
}

int cmd_enrich(const ProjectConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    check_project_config(config);
    Inputs inputs = read_inputs(config);
    enrich(config, inputs.ead, err);

    std::vector<const ArchivalUnit*> units;
    collect_units(inputs.ead.root, units);
    for (const ArchivalUnit* unit : units) {
      std::string relative = relative_to_base(ead_export_uri(config.build, unit->unit_id), config.build.base_uri);
      EadDocument excerpt{inputs.ead.control_header, *unit, inputs.ead.namespace_uri};
      text::write_file(config.out_dir / relative, emit_ead(excerpt));
    }
    out << "EAD exports written: " << units.size() << " under " << config.out_dir.string() << "\n";
    return 0;
  });
}

int cmd_serve(ServerConfig config, std::ostream& err) {
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  // Server threads inherit the mask, so only sigwait below sees the signals.
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  return guarded(err, [&] {
    if (!config.request_log) {
      config.request_log = [&err](const std::string& line) { err << line << std::endl; };
    }
    ServerHandle handle = serve(config);
    err << "serving " << config.root_dir.string() << " at " << handle.base_url() << "\n";
    int received = 0;
    sigwait(&signals, &received);
    err << "shutting down\n";
    handle.stop();
    return 0;
  });
}

}  // namespace ead2iiif
