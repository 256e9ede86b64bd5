#include <gtest/gtest.h>

#include <json.hpp>

#include "ead2iiif/error.hpp"
#include "ead2iiif/iiif_serialize.hpp"
#include "support/fixture.hpp"

using namespace ead2iiif;
using json = nlohmann::json;

namespace {

IiifResource minimal_collection() {
  IiifResource c;
  c.id = "http://x.org/collection/a.json";
  c.kind = ResourceKind::Collection;
  c.label = language_map("it", "Fondo A");
  c.metadata.push_back({language_map("it", "titolo"), language_map("it", "Fondo A")});
  c.see_also.push_back({"http://x.org/ead/a.xml", "Dataset", "text/xml", language_map("it", "EAD")});
  IiifResource ref;
  ref.id = "http://x.org/manifest/b.json";
  ref.kind = ResourceKind::Manifest;
  ref.label = language_map("it", "B");
  c.items.push_back(ref);
  return c;
}

IiifResource canvas_with(BodyKind kind) {
  IiifResource canvas;
  canvas.id = "http://x.org/manifest/b/canvas/0";
  canvas.kind = ResourceKind::Canvas;
  canvas.label = language_map("it", "B");
  PaintedBody body;
  body.location = "http://x.org/media/b";
  body.kind = kind;
  body.format = "application/octet-stream";
  if (kind != BodyKind::Sound) {
    body.width = canvas.width = 640;
    body.height = canvas.height = 480;
  }
  if (kind != BodyKind::Image) body.duration = canvas.duration = 12.5;
  canvas.content = body;
  return canvas;
}

IiifResource minimal_manifest(BodyKind kind = BodyKind::Image) {
  IiifResource m;
  m.id = "http://x.org/manifest/b.json";
  m.kind = ResourceKind::Manifest;
  m.label = language_map("it", "B");
  m.metadata.push_back({language_map("it", "titolo"), language_map("it", "B")});
  m.see_also.push_back({"http://x.org/ead/b.xml", "Dataset", "text/xml", language_map("it", "EAD")});
  m.items.push_back(canvas_with(kind));
  return m;
}

std::vector<std::string> rules_of(const std::vector<ValidationIssue>& issues, Severity severity) {
  std::vector<std::string> out;
  for (const auto& i : issues) {
    if (i.severity == severity) out.push_back(i.rule);
  }
  return out;
}

bool has_rule(const std::vector<ValidationIssue>& issues, std::string_view rule) {
  for (const auto& i : issues) {
    if (i.rule == rule) return true;
  }
  return false;
}

}  // namespace

TEST(Serialize, MinimalCollectionShape) {
  auto text = serialize(minimal_collection());
  ASSERT_FALSE(text.empty());
  EXPECT_EQ(text.back(), '\n');
  auto j = json::parse(text);
  EXPECT_EQ(j["@context"], "http://iiif.io/api/presentation/3/context.json");
  EXPECT_EQ(j["type"], "Collection");
  EXPECT_EQ(j["label"]["it"][0], "Fondo A");
  EXPECT_EQ(j["seeAlso"][0]["format"], "text/xml");
  EXPECT_EQ(j["seeAlso"][0]["type"], "Dataset");
  EXPECT_EQ(j["items"][0]["type"], "Manifest");
  EXPECT_FALSE(j["items"][0].contains("@context"));

  // Key order is fixed.
  auto ctx = text.find("\"@context\"");
  auto id = text.find("\"id\"");
  auto type = text.find("\"type\"");
  auto label = text.find("\"label\"");
  auto see_also = text.find("\"seeAlso\"");
  auto items = text.find("\"items\"");
  EXPECT_LT(ctx, id);
  EXPECT_LT(id, type);
  EXPECT_LT(type, label);
  EXPECT_LT(label, see_also);
  EXPECT_LT(see_also, items);
}

TEST(Serialize, CanvasCarriesPaintingAnnotation) {
  auto j = json::parse(serialize(minimal_manifest(BodyKind::Video)));
  const auto& canvas = j["items"][0];
  EXPECT_EQ(canvas["duration"], 12.5);
  EXPECT_EQ(canvas["width"], 640);
  const auto& page = canvas["items"][0];
  EXPECT_EQ(page["type"], "AnnotationPage");
  EXPECT_EQ(page["id"], "http://x.org/manifest/b/canvas/0/page/0");
  const auto& anno = page["items"][0];
  EXPECT_EQ(anno["motivation"], "painting");
  EXPECT_EQ(anno["target"], canvas["id"]);
  EXPECT_EQ(anno["body"]["type"], "Video");
  EXPECT_EQ(anno["body"]["duration"], 12.5);
}

TEST(Serialize, IntegralDurationIsWrittenAsInteger) {
  auto m = minimal_manifest(BodyKind::Video);
  m.items[0].duration = m.items[0].content->duration = 1920.0;
  auto text = serialize(m);
  EXPECT_NE(text.find("\"duration\": 1920\n"), std::string::npos);
  EXPECT_EQ(text.find("1920.0"), std::string::npos);
}

TEST(Serialize, RefusesInvalidResources) {
  auto m = minimal_manifest();
  m.label.clear();
  try {
    serialize(m);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnserializableResource);
  }
}

TEST(Serialize, ParseBackIsLossless) {
  for (const auto& r : {minimal_collection(), minimal_manifest(BodyKind::Image), minimal_manifest(BodyKind::Video),
                        minimal_manifest(BodyKind::Sound)}) {
    auto text = serialize(r);
    auto back = parse_resource(text);
    EXPECT_EQ(back, r) << text;
    EXPECT_EQ(serialize(back), text);
  }
  auto set = build_all(fixture::finding_aid().root, fixture::inventory(), fixture::build_config());
  for (const auto& [id, r] : set.by_id) {
    if (r.kind == ResourceKind::Canvas) continue;
    EXPECT_EQ(parse_resource(serialize(r)), r) << id;
  }
}

TEST(Serialize, ParseRejectsGarbage) {
  for (const char* bad : {"", "[1,2]", "{\"id\":", "null"}) {
    try {
      parse_resource(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UnreadableInput);
    }
  }
}

TEST(Validate, MinimalResourcesAreClean) {
  EXPECT_TRUE(validate_resource(minimal_collection()).empty());
  for (auto kind : {BodyKind::Image, BodyKind::Video, BodyKind::Sound}) {
    EXPECT_TRUE(validate_resource(minimal_manifest(kind)).empty());
  }
}

TEST(Validate, StructuralErrors) {
  auto m = minimal_manifest();
  m.id = "manifest/b.json";
  EXPECT_TRUE(has_rule(validate_resource(m), check::RelativeId));
  m.id.clear();
  EXPECT_TRUE(has_rule(validate_resource(m), check::MissingId));

  m = minimal_manifest();
  m.items.clear();
  EXPECT_EQ(rules_of(validate_resource(m), Severity::Error), std::vector<std::string>{"ManifestNoCanvas"});

  m = minimal_manifest();
  m.items[0].kind = ResourceKind::Manifest;
  EXPECT_TRUE(has_rule(validate_resource(m), check::ManifestBadItem));

  auto c = minimal_collection();
  c.items[0].kind = ResourceKind::Canvas;
  EXPECT_TRUE(has_rule(validate_resource(c), check::CollectionBadItem));

  m = minimal_manifest();
  m.kind = ResourceKind::Other;
  m.other_type = "Range";
  EXPECT_TRUE(has_rule(validate_resource(m), check::UnknownType));

  m = minimal_manifest();
  m.items.push_back(m.items[0]);
  EXPECT_TRUE(has_rule(validate_resource(m), check::DuplicateId));
}

TEST(Validate, ExtentRules) {
  auto m = minimal_manifest(BodyKind::Video);
  m.items[0].width.reset();
  m.items[0].height.reset();
  m.items[0].duration.reset();
  EXPECT_TRUE(has_rule(validate_resource(m), check::CanvasNoExtent));

  m = minimal_manifest(BodyKind::Video);
  m.items[0].duration.reset();
  m.items[0].content->duration.reset();
  EXPECT_TRUE(has_rule(validate_resource(m), check::ExtentBodyMismatch));

  m = minimal_manifest(BodyKind::Image);
  m.items[0].width = 641;
  EXPECT_TRUE(has_rule(validate_resource(m), check::ExtentBodyMismatch));

  m = minimal_manifest(BodyKind::Sound);
  m.items[0].width = m.items[0].content->width = 10;
  m.items[0].height = m.items[0].content->height = 10;
  EXPECT_TRUE(has_rule(validate_resource(m), check::ExtentBodyMismatch));

  m = minimal_manifest(BodyKind::Image);
  m.items[0].duration = m.items[0].content->duration = 3.0;
  EXPECT_TRUE(has_rule(validate_resource(m), check::ExtentBodyMismatch));
}

TEST(Validate, Warnings) {
  auto m = minimal_manifest();
  m.see_also.clear();
  m.metadata.clear();
  auto issues = validate_resource(m);
  EXPECT_EQ(count_errors(issues), 0u);
  EXPECT_TRUE(has_rule(issues, check::MissingSeeAlso));
  EXPECT_TRUE(has_rule(issues, check::EmptyMetadata));

  auto c = minimal_collection();
  c.items.clear();
  issues = validate_resource(c);
  EXPECT_EQ(count_errors(issues), 0u);
  EXPECT_TRUE(has_rule(issues, check::CollectionEmpty));
}

TEST(Validate, DanglingReferencesAcrossASet) {
  auto issues = validate_resources({minimal_collection()});
  EXPECT_TRUE(has_rule(issues, check::DanglingReference));
  EXPECT_EQ(count_errors(validate_resources({minimal_collection(), minimal_manifest()})), 0u);
}

TEST(Validate, FixtureSetHasNoErrors) {
  auto set = build_all(fixture::finding_aid().root, fixture::inventory(), fixture::build_config());
  auto issues = validate_set(set);
  EXPECT_EQ(count_errors(issues), 0u);
  EXPECT_EQ(rules_of(issues, Severity::Warning), std::vector<std::string>{"CollectionEmpty"});
}

TEST(Site, RelativeToBase) {
  EXPECT_EQ(relative_to_base("http://x.org/iiif/manifest/a.json", "http://x.org/iiif"), "manifest/a.json");
  for (const char* bad : {"http://y.org/iiif/a.json", "http://x.org/iiifa/b.json", "http://x.org/iiif/",
                          "http://x.org/iiif/a/../b.json", "http://x.org/iiif/a//b", "http://x.org/iiif/a.json?x=1",
                          "http://x.org/iiif/a.json#f"}) {
    try {
      relative_to_base(bad, "http://x.org/iiif");
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::UriOutsideBase) << bad;
    }
  }
}

TEST(Site, WritesEveryResourceAndExportDeterministically) {
  auto doc = fixture::enriched_finding_aid();
  auto set = build_all(doc.root, fixture::inventory(), fixture::build_config());
  fixture::TempDir a("site-a");
  fixture::TempDir b("site-b");
  auto written = write_site(set, doc, a.path());
  EXPECT_EQ(written.size(), 13u);
  EXPECT_EQ(written, write_site(set, doc, b.path()));
  for (const auto& path : written) {
    EXPECT_EQ(fixture::read(a.path() / path), fixture::read(b.path() / path)) << path;
  }
  auto item = parse_ead(fixture::read(a.path() / "ead/il8600011581.xml"));
  EXPECT_EQ(item.root.unit_id, "IL8600011581");
  EXPECT_EQ(item.control_header, doc.control_header);
}

TEST(Site, IdsOutsideBaseAreRejected) {
  auto doc = fixture::finding_aid();
  auto config = fixture::build_config();
  config.ead_export_uri_pattern = "http://elsewhere.org/ead/{slug}.xml";
  auto set = build_all(doc.root, fixture::inventory(), config);
  fixture::TempDir dir("site-outside");
  try {
    write_site(set, doc, dir.path());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UriOutsideBase);
  }
  EXPECT_TRUE(std::filesystem::is_empty(dir.path()));
}
