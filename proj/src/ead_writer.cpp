#include <algorithm>
#include <utility>

#include "ead2iiif/ead_io.hpp"
#include "ead2iiif/error.hpp"

namespace ead2iiif {

namespace {

using Attributes = std::vector<std::pair<std::string, std::string>>;

std::string escape(std::string_view s, bool attribute) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"':
        if (attribute) {
          out += "&quot;";
          break;
        }
        [[fallthrough]];
      default: out += c;
    }
  }
  return out;
}

class XmlWriter {
 public:
  void declaration() { out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"; }

  void open(std::string_view name, Attributes attributes = {}) {
    start_tag(name, std::move(attributes));
    out_ += ">\n";
    ++depth_;
  }

  void close(std::string_view name) {
    --depth_;
    indent();
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }

  void leaf(std::string_view name, std::string_view content, Attributes attributes = {}) {
    start_tag(name, std::move(attributes));
    if (content.empty()) {
      out_ += "/>\n";
      return;
    }
    out_ += '>';
    out_ += escape(content, false);
    out_ += "</";
    out_ += name;
    out_ += ">\n";
  }

  void raw_line(std::string_view content) {
    indent();
    out_ += content;
    out_ += '\n';
  }

  std::string take() { return std::move(out_); }

 private:
  void indent() { out_.append(static_cast<std::size_t>(depth_) * 2, ' '); }

  void start_tag(std::string_view name, Attributes attributes) {
    std::sort(attributes.begin(), attributes.end());
    indent();
    out_ += '<';
    out_ += name;
    for (const auto& [key, value] : attributes) {
      out_ += ' ';
      out_ += key;
      out_ += "=\"";
      out_ += escape(value, true);
      out_ += '"';
    }
  }

  std::string out_;
  int depth_ = 0;
};

std::string_view term_element(TermCategory category) {
  switch (category) {
    case TermCategory::Subject: return "subject";
    case TermCategory::Place: return "geogname";
    case TermCategory::Person: return "persname";
    case TermCategory::CorporateBody: return "corpname";
  }
  return "subject";
}

void write_did(XmlWriter& w, const ArchivalUnit& unit) {
  w.open("did");
  Attributes id_attributes{{"identifier", unit.unit_id}};
  if (unit.country_code) id_attributes.emplace_back("countrycode", *unit.country_code);
  w.leaf("unitid", unit.unit_id, std::move(id_attributes));
  if (!unit.title.empty()) w.leaf("unittitle", unit.title);
  if (!unit.date_display.empty() || unit.date_normal) {
    Attributes date_attributes;
    if (unit.date_normal) date_attributes.emplace_back("normal", *unit.date_normal);
    w.leaf("unitdate", unit.date_display, std::move(date_attributes));
  }
  if (unit.extent) {
    w.open("physdescstructured",
           {{"coverage", "whole"}, {"physdescstructuredtype", "materialtype"}});
    w.leaf("quantity", std::to_string(unit.extent->quantity));
    w.leaf("unittype", unit.extent->unit_type);
    if (!unit.extent->note.empty()) {
      w.open("descriptivenote");
      w.leaf("p", unit.extent->note);
      w.close("descriptivenote");
    }
    w.close("physdescstructured");
  }
  if (unit.scope_note) w.leaf("didnote", *unit.scope_note);
  for (const auto& pair : unit.descriptive_pairs) {
    w.leaf("didnote", pair.value, {{"label", pair.label}});
  }
  if (unit.repository) {
    w.open("repository");
    w.open("corpname");
    w.leaf("part", *unit.repository);
    w.close("corpname");
    w.close("repository");
  }
  w.close("did");
}

void write_control_access(XmlWriter& w, const std::vector<AccessTerm>& terms) {
  if (terms.empty()) return;
  w.open("controlaccess");
  for (auto category : {TermCategory::Subject, TermCategory::Place, TermCategory::CorporateBody,
                        TermCategory::Person}) {
    for (const auto& term : terms) {
      if (term.category != category) continue;
      Attributes attributes;
      if (term.identifier) attributes.emplace_back("identifier", *term.identifier);
      if (term.normal_form) attributes.emplace_back("normal", *term.normal_form);
      if (term.source) attributes.emplace_back("source", *term.source);
      auto element = term_element(category);
      w.open(element, std::move(attributes));
      w.leaf("part", term.part);
      w.close(element);
    }
  }
  w.close("controlaccess");
}

// Schema order: did, controlaccess, then subordinate components.
void write_component(XmlWriter& w, const ArchivalUnit& unit, bool is_archdesc) {
  std::string_view element = is_archdesc ? "archdesc" : "c";
  w.open(element, {{"level", std::string(to_string(unit.level))}});
  write_did(w, unit);
  write_control_access(w, unit.access_terms);
  if (!unit.children.empty()) {
    if (is_archdesc) w.open("dsc");
    for (const auto& child : unit.children) write_component(w, child, false);
    if (is_archdesc) w.close("dsc");
  }
  w.close(element);
}

}  // namespace

std::string emit_ead(const EadDocument& doc) {
  for (const auto& violation : validate_subtree(doc.root)) {
    if (violation.rule == rule::TermSource) continue;  // thesaurus set is deployment config
    throw Error(ErrorCode::InvalidTree,
                "cannot emit unit '" + violation.unit_id + "': " + violation.message);
  }

  XmlWriter w;
  w.declaration();
  w.open("ead", {{"xmlns", doc.namespace_uri},
                 {"xmlns:xsi", "http://www.w3.org/2001/XMLSchema-instance"},
                 {"xsi:schemaLocation", doc.namespace_uri + " ead3.xsd"}});
  if (!doc.control_header.empty()) w.raw_line(doc.control_header);
  write_component(w, doc.root, true);
  w.close("ead");
  return w.take();
}

}  // namespace ead2iiif
