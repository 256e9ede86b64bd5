#include <algorithm>

#include <json.hpp>

#include "ead2iiif/enrichment.hpp"
#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

std::string_view interchange_name(TermOrigin origin) {
  switch (origin) {
    case TermOrigin::TextNlp: return "text_nlp";
    case TermOrigin::ObjectDetection: return "object_detection";
    case TermOrigin::TopicModel: return "topic_model";
    case TermOrigin::Manual: return "manual";
  }
  return "";
}

std::optional<TermOrigin> origin_from_interchange(std::string_view name) {
  for (auto o : {TermOrigin::TextNlp, TermOrigin::ObjectDetection, TermOrigin::TopicModel,
                 TermOrigin::Manual}) {
    if (interchange_name(o) == name) return o;
  }
  return std::nullopt;
}

namespace {

Error violation(const std::string& message) {
  return Error(ErrorCode::SchemaViolation, "term list: " + message);
}

const std::string& string_field(const nlohmann::json& object, const char* key, const std::string& where) {
  auto it = object.find(key);
  if (it == object.end() || !it->is_string()) {
    throw violation(where + " needs string field '" + key + "'");
  }
  return it->get_ref<const std::string&>();
}

}  // namespace

TermList parse_term_list(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw violation(std::string("not valid JSON (") + e.what() + ")");
  }
  if (!doc.is_object()) throw violation("document must be a JSON object");
  for (const auto& item : doc.items()) {
    if (item.key() != "unit_id" && item.key() != "terms") {
      throw violation("unknown field '" + item.key() + "'");
    }
  }

  TermList list;
  list.unit_id = text::trim(string_field(doc, "unit_id", "document"));
  if (list.unit_id.empty()) throw violation("unit_id must not be empty");
  auto terms = doc.find("terms");
  if (terms == doc.end() || !terms->is_array()) throw violation("document needs a 'terms' array");

  for (std::size_t i = 0; i < terms->size(); ++i) {
    const auto& entry = (*terms)[i];
    std::string where = "terms[" + std::to_string(i) + "]";
    if (!entry.is_object()) throw violation(where + " must be an object");
    for (const auto& item : entry.items()) {
      const auto& key = item.key();
      if (key != "surface" && key != "category" && key != "confidence" && key != "origin") {
        throw violation(where + " has unknown field '" + key + "'");
      }
    }

    ExtractedTerm term;
    term.surface = text::trim(string_field(entry, "surface", where));
    if (term.surface.empty()) throw violation(where + " has an empty surface");
    const auto& category = string_field(entry, "category", where);
    auto parsed_category = category_from_interchange(category);
    if (!parsed_category) throw violation(where + " has unknown category '" + category + "'");
    term.category = *parsed_category;

    // The extractor always tags origin; hand-written lists may omit it.
    if (entry.contains("origin")) {
      const auto& origin = string_field(entry, "origin", where);
      auto parsed_origin = origin_from_interchange(origin);
      if (!parsed_origin) throw violation(where + " has unknown origin '" + origin + "'");
      term.origin = *parsed_origin;
    }
    if (auto c = entry.find("confidence"); c != entry.end() && !c->is_null()) {
      if (!c->is_number() || c->get<double>() < 0.0 || c->get<double>() > 1.0) {
        throw violation(where + " confidence must be a number in [0, 1]");
      }
      term.confidence = c->get<double>();
    }

    auto duplicate = std::find_if(list.terms.begin(), list.terms.end(), [&](const ExtractedTerm& t) {
      return t.surface == term.surface && t.category == term.category;
    });
    if (duplicate == list.terms.end()) {
      list.terms.push_back(std::move(term));
    } else if (term.confidence &&
               (!duplicate->confidence || *term.confidence > *duplicate->confidence)) {
      duplicate->confidence = term.confidence;
    }
  }
  return list;
}

std::string write_term_list(const TermList& list) {
  nlohmann::ordered_json doc;
  doc["unit_id"] = list.unit_id;
  doc["terms"] = nlohmann::ordered_json::array();
  for (const auto& term : list.terms) {
    nlohmann::ordered_json entry;
    entry["surface"] = term.surface;
    entry["category"] = interchange_name(term.category);
    if (term.confidence) entry["confidence"] = *term.confidence;
    entry["origin"] = interchange_name(term.origin);
    doc["terms"].push_back(std::move(entry));
  }
  return doc.dump(2, ' ', false) + "\n";
}

}  // namespace ead2iiif
