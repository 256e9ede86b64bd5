#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>
#include <vector>

#include "ead2iiif/archival_model.hpp"

namespace ead2iiif {

enum class TermOrigin { TextNlp, ObjectDetection, TopicModel, Manual };

/// Interchange spelling: "text_nlp" | "object_detection" | "topic_model" | "manual".
std::string_view interchange_name(TermOrigin origin);
std::optional<TermOrigin> origin_from_interchange(std::string_view name);

struct ExtractedTerm {
  std::string surface;
  TermCategory category = TermCategory::Subject;
  std::optional<double> confidence;
  TermOrigin origin = TermOrigin::Manual;

  bool operator==(const ExtractedTerm&) const = default;
};

struct TermList {
  std::string unit_id;
  std::vector<ExtractedTerm> terms;

  bool operator==(const TermList&) const = default;
};

/// Parses the JSON term-list interchange document:
///   {"unit_id": "...", "terms": [{"surface", "category", "confidence"?, "origin"}]}
/// Surfaces are trimmed; duplicate (surface, category) pairs collapse onto
/// the first occurrence, keeping the highest confidence. Throws SchemaViolation.
TermList parse_term_list(std::string_view text);

/// Writes the interchange document, 2-space indented.
std::string write_term_list(const TermList& list);

struct AuthorityRecord {
  std::string canonical_label;
  /// Subject headings taken from a snapshot may have no URI.
  std::optional<std::string> identifier;
  std::string source;

  bool operator==(const AuthorityRecord&) const = default;
};

/// Looks terms up in one thesaurus. Implementations must be deterministic
/// for fixed data and safe to call from several threads.
class AuthorityResolver {
 public:
  virtual ~AuthorityResolver() = default;
  virtual std::optional<AuthorityRecord> lookup(std::string_view surface,
                                                TermCategory category) const = 0;
  virtual const std::string& source_name() const = 0;
};

/// Offline resolver over a table of (surface, category) -> record rows, all
/// from one thesaurus. Matching is exact after case folding.
class SnapshotResolver final : public AuthorityResolver {
 public:
  struct Row {
    std::string surface;
    TermCategory category;
    AuthorityRecord record;
  };

  SnapshotResolver(std::string source_name, std::vector<Row> rows);

  /// Reads a tab-separated table with header
  /// `surface  category  canonical_label  identifier  source`
  /// and returns one resolver per distinct source, in first-seen order.
  static std::vector<std::shared_ptr<SnapshotResolver>> load(std::string_view tsv);
  static std::vector<std::shared_ptr<SnapshotResolver>> load_file(const std::filesystem::path& path);

  std::optional<AuthorityRecord> lookup(std::string_view surface, TermCategory category) const override;
  const std::string& source_name() const override { return source_; }
  std::size_t size() const { return index_.size(); }

 private:
  std::string source_;
  std::map<std::pair<std::string, TermCategory>, AuthorityRecord> index_;
};

struct ViafConfig {
  /// Full URL of the AutoSuggest endpoint; the surface goes in `query`.
  std::string endpoint = "https://viaf.org/viaf/AutoSuggest";
  std::chrono::milliseconds timeout{10'000};
  int max_in_flight = 4;
  /// Responses are cached here, keyed by (endpoint, surface, category).
  std::optional<std::filesystem::path> cache_dir;
};

/// Remote VIAF resolver. Picks the top-ranked result whose name type matches
/// the category (geographic, personal, corporate); subjects never match.
/// Throws ResolverUnavailable on transport failure, timeout or non-2xx.
class ViafResolver final : public AuthorityResolver {
 public:
  explicit ViafResolver(ViafConfig config);

  std::optional<AuthorityRecord> lookup(std::string_view surface, TermCategory category) const override;
  const std::string& source_name() const override { return source_; }

  /// Number of HTTP requests actually sent (cache hits excluded).
  std::size_t requests_sent() const;

 private:
  std::optional<AuthorityRecord> fetch(const std::string& query, TermCategory category) const;
  std::filesystem::path cache_path(const std::string& query, TermCategory category) const;

  ViafConfig config_;
  std::string source_ = "viaf";
  std::string scheme_host_port_;
  std::string path_;
  mutable std::counting_semaphore<64> in_flight_;
  mutable std::mutex mutex_;
  mutable std::size_t requests_ = 0;
};

/// Which thesauri (by source name) may normalize each category.
using RoutingTable = std::map<TermCategory, std::vector<std::string>>;

/// Subjects to the subject thesaurus, names and places to VIAF.
RoutingTable default_routing();

struct NormalizeOptions {
  RoutingTable routing = default_routing();
  /// Terms whose confidence is below the floor for their origin are dropped.
  std::map<TermOrigin, double> confidence_floor = {{TermOrigin::ObjectDetection, 0.5}};
  /// Strict: ResolverUnavailable propagates. Lenient: degrade to a miss.
  bool strict = false;
};

struct NormalizeResult {
  std::vector<AccessTerm> terms;
  std::vector<std::string> warnings;
};

/// Resolvers are consulted in list order, restricted to the sources routed
/// for the term's category; the first hit wins. Output keeps input order.
/// Throws NoResolverForCategory when a category present in `terms` has no
/// routed resolver.
NormalizeResult normalize_terms(const TermList& terms,
                                const std::vector<std::shared_ptr<const AuthorityResolver>>& resolvers,
                                const NormalizeOptions& options = {});

/// Appends terms not already present. Identity is (category, identifier)
/// or, without identifier, (category, case-folded part).
ArchivalUnit merge_control_access(ArchivalUnit unit, const std::vector<AccessTerm>& new_terms);

}  // namespace ead2iiif
