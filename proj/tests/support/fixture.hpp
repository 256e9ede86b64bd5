#pragma once

#include <httplib.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <random>
#include <string>
#include <thread>

#include "ead2iiif/ead_io.hpp"
#include "ead2iiif/enrichment.hpp"
#include "ead2iiif/iiif_build.hpp"
#include "ead2iiif/text.hpp"

namespace fixture {

namespace fs = std::filesystem;

inline fs::path root() { return fs::path(EAD2IIIF_FIXTURES); }
inline fs::path pci() { return root() / "pci_unitefilm"; }
inline fs::path viaf() { return root() / "viaf"; }

inline std::string read(const fs::path& p) { return ead2iiif::text::read_file(p); }

inline ead2iiif::EadDocument finding_aid() { return ead2iiif::parse_ead(read(pci() / "finding_aid.xml")); }
inline ead2iiif::MediaInventory inventory() {
  return ead2iiif::parse_media_inventory(read(pci() / "inventory.jsonl"));
}
inline ead2iiif::TermList term_list() { return ead2iiif::parse_term_list(read(pci() / "termlists/IL8600011581.json")); }

inline std::vector<std::shared_ptr<const ead2iiif::AuthorityResolver>> snapshot_resolvers() {
  std::vector<std::shared_ptr<const ead2iiif::AuthorityResolver>> out;
  for (auto& r : ead2iiif::SnapshotResolver::load_file(pci() / "authority_snapshot.tsv")) out.push_back(r);
  return out;
}

/// Finding aid with the fixture term list normalized against the snapshot
/// and merged into IL8600011581.
inline ead2iiif::EadDocument enriched_finding_aid() {
  auto doc = finding_aid();
  auto result = ead2iiif::normalize_terms(term_list(), snapshot_resolvers());
  auto* unit = ead2iiif::find_unit(doc.root, "IL8600011581");
  *unit = ead2iiif::merge_control_access(std::move(*unit), result.terms);
  return doc;
}

inline ead2iiif::BuildConfig build_config(std::string base = "http://127.0.0.1:5501") {
  ead2iiif::BuildConfig config;
  config.base_uri = std::move(base);
  return config;
}

/// Fresh, empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("ead2iiif-" + tag + "-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

/// Loopback stand-in for the VIAF AutoSuggest endpoint, replaying the
/// recorded bodies under fixtures/viaf.
///   /viaf/AutoSuggest   recorded body keyed by the query, else an empty result
///   /unavailable        503
///   /slow               sleeps `delay` before answering
///   /garbage            200 with a non-JSON body
class FakeViaf {
 public:
  explicit FakeViaf(std::chrono::milliseconds delay = std::chrono::milliseconds(1500)) : delay_(delay) {
    server_.Get("/viaf/AutoSuggest", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      res.set_content(body_for(req.get_param_value("query")), "application/json");
    });
    server_.Get("/unavailable", [this](const httplib::Request&, httplib::Response& res) {
      ++hits_;
      res.status = 503;
      res.set_content("Service Unavailable", "text/plain");
    });
    server_.Get("/slow", [this](const httplib::Request& req, httplib::Response& res) {
      ++hits_;
      std::this_thread::sleep_for(delay_);
      res.set_content(body_for(req.get_param_value("query")), "application/json");
    });
    server_.Get("/garbage", [this](const httplib::Request&, httplib::Response& res) {
      ++hits_;
      res.set_content("<html>maintenance</html>", "text/html");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeViaf() {
    server_.stop();
    thread_.join();
  }

  std::string url(const std::string& path) const { return "http://127.0.0.1:" + std::to_string(port_) + path; }
  int hits() const { return hits_; }

 private:
  static std::string body_for(const std::string& query) {
    std::string key = ead2iiif::text::casefold(query);
    for (auto& c : key) {
      if (c == ' ') c = '_';
    }
    auto path = viaf() / ("autosuggest_" + key + ".json");
    return fs::exists(path) ? read(path) : read(viaf() / "autosuggest_empty.json");
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = -1;
  std::chrono::milliseconds delay_;
  std::atomic<int> hits_{0};
};

}  // namespace fixture
