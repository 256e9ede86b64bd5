#include <algorithm>

#include "ead2iiif/enrichment.hpp"
#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

RoutingTable default_routing() {
  return {
      {TermCategory::Subject, {"nuovo soggettario"}},
      {TermCategory::Place, {"viaf"}},
      {TermCategory::Person, {"viaf"}},
      {TermCategory::CorporateBody, {"viaf"}},
  };
}

NormalizeResult normalize_terms(const TermList& terms,
                                const std::vector<std::shared_ptr<const AuthorityResolver>>& resolvers,
                                const NormalizeOptions& options) {
  // Resolve the route of every category up front, in resolver-list order.
  std::map<TermCategory, std::vector<const AuthorityResolver*>> routes;
  for (const auto& term : terms.terms) {
    if (routes.contains(term.category)) continue;
    auto allowed = options.routing.find(term.category);
    auto& route = routes[term.category];
    if (allowed != options.routing.end()) {
      for (const auto& resolver : resolvers) {
        const auto& names = allowed->second;
        if (std::find(names.begin(), names.end(), resolver->source_name()) != names.end()) {
          route.push_back(resolver.get());
        }
      }
    }
    if (route.empty()) {
      throw Error(ErrorCode::NoResolverForCategory,
                  "no resolver routed for category " + std::string(to_string(term.category)));
    }
  }

  NormalizeResult result;
  for (const auto& term : terms.terms) {
    auto floor = options.confidence_floor.find(term.origin);
    if (floor != options.confidence_floor.end() && term.confidence && *term.confidence < floor->second) {
      continue;
    }

    AccessTerm access;
    access.category = term.category;
    access.part = term.surface;
    for (const auto* resolver : routes[term.category]) {
      std::optional<AuthorityRecord> record;
      try {
        record = resolver->lookup(term.surface, term.category);
      } catch (const Error& e) {
        if (options.strict || e.code() != ErrorCode::ResolverUnavailable) throw;
        result.warnings.push_back("resolver '" + resolver->source_name() + "' unavailable for '" +
                                  term.surface + "': " + e.what());
        continue;
      }
      if (!record) continue;
      access.source = record->source;
      access.identifier = record->identifier;
      access.normal_form = record->canonical_label;
      break;
    }
    result.terms.push_back(std::move(access));
  }
  return result;
}

namespace {

bool same_term(const AccessTerm& a, const AccessTerm& b) {
  if (a.category != b.category) return false;
  if (a.identifier && b.identifier) return *a.identifier == *b.identifier;
  if (!a.identifier && !b.identifier) return text::casefold(a.part) == text::casefold(b.part);
  return false;
}

}  // namespace

ArchivalUnit merge_control_access(ArchivalUnit unit, const std::vector<AccessTerm>& new_terms) {
  for (const auto& term : new_terms) {
    bool present = std::any_of(unit.access_terms.begin(), unit.access_terms.end(),
                               [&](const AccessTerm& existing) { return same_term(existing, term); });
    if (!present) unit.access_terms.push_back(term);
  }
  return unit;
}

}  // namespace ead2iiif
