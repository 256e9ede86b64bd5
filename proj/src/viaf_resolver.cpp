#include <openssl/evp.h>

#include <algorithm>
#include <cstdio>

#include <httplib.h>
#include <json.hpp>

#include "ead2iiif/enrichment.hpp"
#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

namespace {

std::optional<std::string_view> viaf_name_type(TermCategory category) {
  switch (category) {
    case TermCategory::Place: return "geographic";
    case TermCategory::Person: return "personal";
    case TermCategory::CorporateBody: return "corporate";
    case TermCategory::Subject: return std::nullopt;
  }
  return std::nullopt;
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  std::string hex;
  char buffer[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buffer, sizeof buffer, "%02x", digest[i]);
    hex += buffer;
  }
  return hex;
}

// Releases a semaphore slot on scope exit.
template <typename Semaphore>
class SlotGuard {
 public:
  explicit SlotGuard(Semaphore& s) : s_(s) { s_.acquire(); }
  ~SlotGuard() { s_.release(); }
  SlotGuard(const SlotGuard&) = delete;
  SlotGuard& operator=(const SlotGuard&) = delete;

 private:
  Semaphore& s_;
};

}  // namespace

ViafResolver::ViafResolver(ViafConfig config)
    : config_(std::move(config)), in_flight_(std::clamp(config_.max_in_flight, 1, 64)) {
  const std::string& url = config_.endpoint;
  auto scheme_end = url.find("://");
  if (!text::is_http_uri(url) || scheme_end == std::string::npos) {
    throw Error(ErrorCode::InvalidConfig, "VIAF endpoint must be an http(s) URL: '" + url + "'");
  }
  auto path_begin = url.find('/', scheme_end + 3);
  scheme_host_port_ = url.substr(0, path_begin);
  path_ = path_begin == std::string::npos ? "/" : url.substr(path_begin);
}

std::size_t ViafResolver::requests_sent() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::filesystem::path ViafResolver::cache_path(const std::string& query, TermCategory category) const {
  std::string key = config_.endpoint + '\n' + query + '\n' + std::string(interchange_name(category));
  return *config_.cache_dir / (sha256_hex(key) + ".json");
}

std::optional<AuthorityRecord> ViafResolver::lookup(std::string_view surface, TermCategory category) const {
  std::string query = text::normalize_space(surface);
  if (query.empty() || !viaf_name_type(category)) return std::nullopt;

  std::filesystem::path cached;
  if (config_.cache_dir) {
    cached = cache_path(query, category);
    std::lock_guard lock(mutex_);
    if (std::filesystem::exists(cached)) {
      auto entry = nlohmann::json::parse(text::read_file(cached), nullptr, false);
      if (entry.is_object() && entry.contains("hit")) {
        if (!entry["hit"].get<bool>()) return std::nullopt;
        return AuthorityRecord{entry.value("label", ""), entry.value("identifier", ""), source_};
      }
    }
  }

  auto record = fetch(query, category);

  if (config_.cache_dir) {
    nlohmann::ordered_json entry;
    entry["endpoint"] = config_.endpoint;
    entry["query"] = query;
    entry["category"] = interchange_name(category);
    entry["hit"] = record.has_value();
    if (record) {
      entry["label"] = record->canonical_label;
      entry["identifier"] = record->identifier.value_or("");
    }
    std::lock_guard lock(mutex_);
    text::write_file(cached, entry.dump(2) + "\n");
  }
  return record;
}

std::optional<AuthorityRecord> ViafResolver::fetch(const std::string& query, TermCategory category) const {
  httplib::Result response;
  {
    SlotGuard slot(in_flight_);
    httplib::Client client(scheme_host_port_);
    auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    auto micros = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - seconds);
    client.set_connection_timeout(seconds.count(), micros.count());
    client.set_read_timeout(seconds.count(), micros.count());
    client.set_write_timeout(seconds.count(), micros.count());
    client.set_follow_location(true);
    {
      std::lock_guard lock(mutex_);
      ++requests_;
    }
    response = client.Get(path_, httplib::Params{{"query", query}},
                          httplib::Headers{{"Accept", "application/json"}});
  }

  if (!response) {
    throw Error(ErrorCode::ResolverUnavailable,
                "VIAF request for '" + query + "' failed: " + httplib::to_string(response.error()));
  }
  if (response->status < 200 || response->status >= 300) {
    throw Error(ErrorCode::ResolverUnavailable,
                "VIAF request for '" + query + "' returned HTTP " + std::to_string(response->status));
  }

  auto body = nlohmann::json::parse(response->body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::ResolverUnavailable, "VIAF response for '" + query + "' is not a JSON object");
  }
  auto results = body.find("result");
  if (results == body.end() || !results->is_array()) return std::nullopt;

  const auto wanted = *viaf_name_type(category);
  for (const auto& candidate : *results) {
    if (!candidate.is_object() || candidate.value("nametype", "") != wanted) continue;
    std::string id;
    if (auto v = candidate.find("viafid"); v != candidate.end()) {
      id = v->is_string() ? v->get<std::string>() : v->is_number_integer() ? std::to_string(v->get<long long>()) : "";
    }
    if (id.empty()) continue;
    std::string label = candidate.value("displayForm", candidate.value("term", query));
    return AuthorityRecord{label, "http://viaf.org/viaf/" + id, source_};
  }
  return std::nullopt;
}

}  // namespace ead2iiif
