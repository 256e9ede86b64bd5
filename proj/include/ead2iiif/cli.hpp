#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "ead2iiif/error.hpp"
#include "ead2iiif/iiif_build.hpp"
#include "ead2iiif/publisher.hpp"

namespace ead2iiif {

/// Project file (JSON). Relative paths are resolved against the file's
/// directory. Keys mirror the field names.
struct ProjectConfig {
  std::filesystem::path ead_path;
  std::optional<std::filesystem::path> inventory_path;
  std::optional<std::filesystem::path> termlist_dir;
  std::optional<std::filesystem::path> snapshot_path;
  std::optional<std::string> viaf_endpoint;
  std::optional<std::filesystem::path> viaf_cache_dir;
  std::filesystem::path out_dir = "site";
  /// Resolver outages abort enrichment instead of degrading to misses.
  bool strict_enrichment = false;
  BuildConfig build;
};

/// Throws InvalidConfig on unknown keys or wrong value types, UnreadableInput
/// when the file cannot be read.
ProjectConfig load_project_config(const std::filesystem::path& path);

/// Throws InvalidConfig when a required input is missing or base_uri is
/// not absolute.
void check_project_config(const ProjectConfig& config);

/// 0 success, 1 validation or structural errors, 2 input errors.
int exit_code_for(ErrorCode code);

struct BuildOptions {
  bool enrich = false;
};

/// ingest, optional enrichment, build, validate, write. Prints a summary to
/// `out` and diagnostics to `err`; returns the exit code.
int cmd_build(const ProjectConfig& config, const BuildOptions& options, std::ostream& out, std::ostream& err);

/// Validates an exported site directory or a single JSON-LD file.
int cmd_validate(const std::filesystem::path& path, std::ostream& out, std::ostream& err);

/// Enriches the finding aid and rewrites the per-unit EAD exports only.
int cmd_enrich(const ProjectConfig& config, std::ostream& out, std::ostream& err);

/// Serves until SIGINT or SIGTERM.
int cmd_serve(ServerConfig config, std::ostream& err);

}  // namespace ead2iiif
