#include <expat.h>

#include <cctype>
#include <charconv>
#include <memory>
#include <utility>

#include "ead2iiif/ead_io.hpp"
#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

LevelMap default_level_map() {
  return {
      {"fonds", ArchivalLevel::Fonds},         {"collection", ArchivalLevel::Fonds},
      {"series", ArchivalLevel::Series},       {"recordgrp", ArchivalLevel::Series},
      {"subseries", ArchivalLevel::Subseries}, {"subgrp", ArchivalLevel::Subseries},
      {"file", ArchivalLevel::File},           {"item", ArchivalLevel::Item},
  };
}

namespace {

// Minimal DOM: element nodes keep their children in document order, text
// nodes have an empty name.
struct XmlNode {
  std::string ns;
  std::string name;
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;
  std::string text;
  long line = 0;

  bool is_text() const { return name.empty(); }

  const std::string* attribute(std::string_view key) const {
    for (const auto& [k, v] : attributes) {
      if (k == key) return &v;
    }
    return nullptr;
  }

  void append_deep_text(std::string& out) const {
    if (is_text()) {
      out += text;
      return;
    }
    for (const auto& child : children) {
      child.append_deep_text(out);
      // Element boundaries separate words even when the source has no space.
      if (!child.is_text()) out += ' ';
    }
  }

  std::string deep_text() const {
    std::string out;
    append_deep_text(out);
    return text::normalize_space(out);
  }
};

constexpr char kNsSeparator = '|';

struct ParseState {
  XML_Parser parser = nullptr;
  std::vector<XmlNode> stack;
  std::optional<XmlNode> root;
  long control_begin = -1;
  long control_end = -1;
};

std::pair<std::string, std::string> split_name(const XML_Char* qname) {
  std::string_view name(qname);
  auto sep = name.find(kNsSeparator);
  if (sep == std::string_view::npos) return {"", std::string(name)};
  return {std::string(name.substr(0, sep)), std::string(name.substr(sep + 1))};
}

bool is_control(const ParseState& state, const XmlNode& node) {
  // <control> is a direct child of the root <ead>.
  return node.name == "control" && node.ns == kEad3Namespace && state.stack.size() == 2;
}

void XMLCALL on_start(void* user, const XML_Char* qname, const XML_Char** attrs) {
  auto& state = *static_cast<ParseState*>(user);
  XmlNode node;
  std::tie(node.ns, node.name) = split_name(qname);
  node.line = static_cast<long>(XML_GetCurrentLineNumber(state.parser));
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    auto [ns, local] = split_name(attrs[i]);
    node.attributes.emplace_back(ns.empty() ? local : ns + kNsSeparator + local, attrs[i + 1]);
  }
  state.stack.push_back(std::move(node));
  if (is_control(state, state.stack.back()) && state.control_begin < 0) {
    state.control_begin = static_cast<long>(XML_GetCurrentByteIndex(state.parser));
    // Covers the self-closing case, where the end event has no bytes.
    state.control_end = state.control_begin + XML_GetCurrentByteCount(state.parser);
  }
}

void XMLCALL on_end(void* user, const XML_Char*) {
  auto& state = *static_cast<ParseState*>(user);
  if (is_control(state, state.stack.back()) && XML_GetCurrentByteCount(state.parser) > 0) {
    state.control_end = static_cast<long>(XML_GetCurrentByteIndex(state.parser)) +
                        XML_GetCurrentByteCount(state.parser);
  }
  XmlNode node = std::move(state.stack.back());
  state.stack.pop_back();
  if (state.stack.empty()) {
    state.root = std::move(node);
  } else {
    state.stack.back().children.push_back(std::move(node));
  }
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
  auto& state = *static_cast<ParseState*>(user);
  if (state.stack.empty()) return;
  auto& children = state.stack.back().children;
  if (children.empty() || !children.back().is_text()) children.emplace_back();
  children.back().text.append(s, static_cast<std::size_t>(len));
}

struct ParsedXml {
  XmlNode root;
  std::string control;
};

ParsedXml parse_xml(std::string_view xml_text) {
  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreateNS("UTF-8", kNsSeparator), &XML_ParserFree);
  ParseState state;
  state.parser = parser.get();
  XML_SetUserData(parser.get(), &state);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  if (XML_Parse(parser.get(), xml_text.data(), static_cast<int>(xml_text.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw Error(ErrorCode::MalformedXml,
                std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) + " at line " +
                    std::to_string(XML_GetCurrentLineNumber(parser.get())) + ", column " +
                    std::to_string(XML_GetCurrentColumnNumber(parser.get())));
  }
  if (!state.root) throw Error(ErrorCode::MalformedXml, "document has no root element");

  ParsedXml parsed{std::move(*state.root), {}};
  if (state.control_begin >= 0) {
    parsed.control = std::string(
        xml_text.substr(static_cast<std::size_t>(state.control_begin),
                        static_cast<std::size_t>(state.control_end - state.control_begin)));
  }
  return parsed;
}

bool is_ead(const XmlNode& node, std::string_view name) {
  return !node.is_text() && node.ns == kEad3Namespace && node.name == name;
}

bool is_component(const XmlNode& node) {
  if (node.is_text() || node.ns != kEad3Namespace) return false;
  if (node.name == "c") return true;
  // Numbered components c01 .. c12.
  return node.name.size() == 3 && node.name[0] == 'c' && std::isdigit(static_cast<unsigned char>(node.name[1])) &&
         std::isdigit(static_cast<unsigned char>(node.name[2]));
}

std::string line_context(const XmlNode& node) { return "line " + std::to_string(node.line); }

class UnitReader {
 public:
  explicit UnitReader(const LevelMap& levels) : levels_(levels) {}

  ArchivalUnit read(const XmlNode& node, int source_order, const std::string& path) {
    ArchivalUnit unit;
    unit.source_order = source_order;
    unit.level = read_level(node, path);

    const XmlNode* did = nullptr;
    for (const auto& child : node.children) {
      if (is_ead(child, "did")) {
        did = &child;
        break;
      }
    }
    if (did != nullptr) read_did(*did, unit);
    if (unit.unit_id.empty()) {
      std::string message = "component " + path;
      if (!unit.title.empty()) message += " ('" + unit.title + "')";
      message += " has no <unitid> (" + line_context(node) + ")";
      throw Error(ErrorCode::MissingUnitId, message);
    }

    std::vector<const XmlNode*> components;
    for (const auto& child : node.children) {
      if (is_ead(child, "controlaccess")) read_control_access(child, unit.access_terms);
      if (is_component(child)) components.push_back(&child);
      if (is_ead(child, "dsc")) {
        for (const auto& c : child.children) {
          if (is_component(c)) components.push_back(&c);
        }
      }
    }
    for (std::size_t i = 0; i < components.size(); ++i) {
      unit.children.push_back(read(*components[i], static_cast<int>(i),
                                   path + "/c[" + std::to_string(i) + "]"));
    }
    return unit;
  }

 private:
  ArchivalLevel read_level(const XmlNode& node, const std::string& path) const {
    const std::string* level = node.attribute("level");
    std::string value = level ? *level : "";
    if (value == "otherlevel") {
      if (const auto* other = node.attribute("otherlevel")) value = *other;
    }
    auto hit = levels_.find(value);
    if (hit == levels_.end()) {
      throw Error(ErrorCode::UnmappedLevel, "component " + path + " has unmapped level '" + value +
                                                "' (" + line_context(node) + ")");
    }
    return hit->second;
  }

  static void read_did(const XmlNode& did, ArchivalUnit& unit) {
    bool have_id = false;
    for (const auto& child : did.children) {
      if (child.is_text() || child.ns != kEad3Namespace) continue;
      const std::string& name = child.name;
      if (name == "unitid" && !have_id) {
        const std::string* identifier = child.attribute("identifier");
        unit.unit_id = identifier && !identifier->empty() ? text::trim(*identifier) : child.deep_text();
        if (const auto* cc = child.attribute("countrycode")) unit.country_code = *cc;
        have_id = !unit.unit_id.empty();
      } else if (name == "unittitle") {
        unit.title = child.deep_text();
      } else if (name == "unitdate") {
        unit.date_display = child.deep_text();
        if (const auto* normal = child.attribute("normal")) unit.date_normal = *normal;
      } else if (name == "physdescstructured" && !unit.extent) {
        unit.extent = read_extent(child);
      } else if (name == "repository") {
        unit.repository = child.deep_text();
      } else if ((name == "didnote" || name == "abstract") && !child.attribute("label") &&
                 !unit.scope_note) {
        unit.scope_note = child.deep_text();
      } else {
        const std::string* label = child.attribute("label");
        unit.descriptive_pairs.push_back(
            {label && !label->empty() ? *label : name, child.deep_text()});
      }
    }
  }

  static Extent read_extent(const XmlNode& node) {
    Extent extent;
    for (const auto& child : node.children) {
      if (is_ead(child, "quantity")) {
        std::string digits = child.deep_text();
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size() || value == 0) {
          throw Error(ErrorCode::SchemaViolation, "<quantity> must be a positive integer, got '" +
                                                      digits + "' (" + line_context(child) + ")");
        }
        extent.quantity = value;
      } else if (is_ead(child, "unittype")) {
        extent.unit_type = child.deep_text();
      } else if (is_ead(child, "descriptivenote")) {
        extent.note = child.deep_text();
      }
    }
    return extent;
  }

  static std::optional<TermCategory> term_category(const XmlNode& node) {
    if (node.is_text() || node.ns != kEad3Namespace) return std::nullopt;
    if (node.name == "subject") return TermCategory::Subject;
    if (node.name == "geogname") return TermCategory::Place;
    if (node.name == "persname") return TermCategory::Person;
    if (node.name == "corpname") return TermCategory::CorporateBody;
    return std::nullopt;
  }

  static void read_control_access(const XmlNode& node, std::vector<AccessTerm>& terms) {
    for (const auto& child : node.children) {
      if (is_ead(child, "controlaccess")) {
        read_control_access(child, terms);
        continue;
      }
      auto category = term_category(child);
      if (!category) continue;
      AccessTerm term;
      term.category = *category;
      std::string parts;
      for (const auto& part : child.children) {
        if (!is_ead(part, "part")) continue;
        if (!parts.empty()) parts += " -- ";
        parts += part.deep_text();
      }
      term.part = parts.empty() ? child.deep_text() : parts;
      if (const auto* v = child.attribute("source")) term.source = *v;
      if (const auto* v = child.attribute("identifier")) term.identifier = *v;
      if (const auto* v = child.attribute("normal")) term.normal_form = *v;
      terms.push_back(std::move(term));
    }
  }

  const LevelMap& levels_;
};

}  // namespace

EadDocument parse_ead(std::string_view xml_text, const LevelMap& levels) {
  ParsedXml parsed = parse_xml(xml_text);
  const XmlNode& root = parsed.root;
  if (root.ns != kEad3Namespace) {
    throw Error(ErrorCode::WrongNamespace, "root element <" + root.name + "> is in namespace '" +
                                               root.ns + "', expected '" +
                                               std::string(kEad3Namespace) + "'");
  }
  if (root.name != "ead") {
    throw Error(ErrorCode::SchemaViolation, "root element is <" + root.name + ">, expected <ead>");
  }

  const XmlNode* archdesc = nullptr;
  for (const auto& child : root.children) {
    if (is_ead(child, "archdesc")) {
      archdesc = &child;
      break;
    }
  }
  if (archdesc == nullptr) throw Error(ErrorCode::SchemaViolation, "document has no <archdesc>");

  EadDocument doc;
  doc.control_header = std::move(parsed.control);
  doc.namespace_uri = root.ns;
  doc.root = UnitReader(levels).read(*archdesc, 0, "archdesc");
  return doc;
}

}  // namespace ead2iiif
