#include <iostream>

#include <CLI11.hpp>

#include "ead2iiif/cli.hpp"

namespace {

using namespace ead2iiif;

struct ProjectFlags {
  std::string config_path;
  std::string ead;
  std::string inventory;
  std::string termlists;
  std::string snapshot;
  std::string viaf_endpoint;
  std::string base_uri;
  std::string language;
  std::string out_dir;
  std::optional<bool> strict_media;

  void attach(CLI::App* cmd) {
    cmd->add_option("-c,--config", config_path, "Project file (JSON)");
    cmd->add_option("--ead", ead, "EAD3 finding aid");
    cmd->add_option("--inventory", inventory, "Media inventory (JSON Lines)");
    cmd->add_option("--termlists", termlists, "Directory of term-list files");
    cmd->add_option("--snapshot", snapshot, "Authority snapshot (TSV)");
    cmd->add_option("--viaf-endpoint", viaf_endpoint, "VIAF AutoSuggest URL");
    cmd->add_option("--base-uri", base_uri, "Public base URI of the site");
    cmd->add_option("--lang", language, "Default language tag");
    cmd->add_option("-o,--out", out_dir, "Output directory");
    cmd->add_flag("--strict-media,!--lenient-media", strict_media, "Fail on items without media");
  }

  // Flags override the project file.
  ProjectConfig resolve() const {
    ProjectConfig config = config_path.empty() ? ProjectConfig{} : load_project_config(config_path);
    if (!ead.empty()) config.ead_path = ead;
    if (!inventory.empty()) config.inventory_path = inventory;
    if (!termlists.empty()) config.termlist_dir = termlists;
    if (!snapshot.empty()) config.snapshot_path = snapshot;
    if (!viaf_endpoint.empty()) config.viaf_endpoint = viaf_endpoint;
    if (!base_uri.empty()) config.build.base_uri = base_uri;
    if (!language.empty()) config.build.default_language = language;
    if (!out_dir.empty()) config.out_dir = out_dir;
    if (strict_media) config.build.strict_media = *strict_media;
    return config;
  }
};

int with_project(const ProjectFlags& flags, const std::function<int(const ProjectConfig&)>& run) {
  try {
    return run(flags.resolve());
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Publish EAD3 finding aids as IIIF Presentation 3 collections and manifests"};
  app.require_subcommand(1);

  ProjectFlags build_flags;
  bool enrich = false;
  auto* build = app.add_subcommand("build", "Build, validate and write the static site");
  build_flags.attach(build);
  build->add_flag("--enrich", enrich, "Normalize term lists into controlaccess before building");

  ProjectFlags enrich_flags;
  auto* enrich_cmd = app.add_subcommand("enrich", "Enrich the finding aid and rewrite the EAD exports");
  enrich_flags.attach(enrich_cmd);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Validate an exported site or a single JSON-LD file");
  validate->add_option("path", validate_path, "Site directory or JSON file")->required();

  std::string root;
  std::string bind = "127.0.0.1:5501";
  std::string cors_origin = "*";
  std::string media_dir;
  bool preflight = false;
  auto* serve_cmd = app.add_subcommand("serve", "Serve an exported site over HTTP");
  serve_cmd->add_option("--root", root, "Exported site directory")->required();
  serve_cmd->add_option("--bind", bind, "host:port")->capture_default_str();
  serve_cmd->add_option("--cors-origin", cors_origin, "Access-Control-Allow-Origin value")->capture_default_str();
  serve_cmd->add_option("--media-dir", media_dir, "Directory served under /media/");
  serve_cmd->add_flag("--preflight", preflight, "Answer OPTIONS with a CORS preflight response");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (build->parsed()) {
    return with_project(build_flags, [&](const ProjectConfig& config) {
      return cmd_build(config, BuildOptions{enrich}, std::cout, std::cerr);
    });
  }
  if (enrich_cmd->parsed()) {
    return with_project(enrich_flags,
                        [&](const ProjectConfig& config) { return cmd_enrich(config, std::cout, std::cerr); });
  }
  if (validate->parsed()) return cmd_validate(validate_path, std::cout, std::cerr);

  try {
    ServerConfig config;
    config.root_dir = root;
    std::tie(config.host, config.port) = parse_bind_address(bind);
    config.cors_allow_origin = cors_origin;
    if (!media_dir.empty()) config.media_dir = media_dir;
    config.cors_preflight = preflight;
    return cmd_serve(config, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}
