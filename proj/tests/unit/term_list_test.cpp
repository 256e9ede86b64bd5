#include <gtest/gtest.h>

#include <random>

#include "ead2iiif/enrichment.hpp"
#include "ead2iiif/error.hpp"
#include "support/fixture.hpp"

using namespace ead2iiif;

TEST(TermList, Fixture) {
  auto list = fixture::term_list();
  EXPECT_EQ(list.unit_id, "IL8600011581");
  ASSERT_EQ(list.terms.size(), 6u);
  EXPECT_EQ(list.terms[3].surface, "Italia");
  EXPECT_EQ(list.terms[3].category, TermCategory::Place);
  EXPECT_EQ(list.terms[3].origin, TermOrigin::TextNlp);
  EXPECT_EQ(list.terms[5].category, TermCategory::CorporateBody);
  EXPECT_DOUBLE_EQ(*list.terms[0].confidence, 0.93);
}

TEST(TermList, OriginDefaultsToManualAndSurfacesAreTrimmed) {
  auto list = parse_term_list(R"({"unit_id":" U ","terms":[{"surface":"  Svizzera ","category":"place"}]})");
  EXPECT_EQ(list.unit_id, "U");
  ASSERT_EQ(list.terms.size(), 1u);
  EXPECT_EQ(list.terms[0].surface, "Svizzera");
  EXPECT_EQ(list.terms[0].origin, TermOrigin::Manual);
  EXPECT_FALSE(list.terms[0].confidence);
}

TEST(TermList, DuplicatesCollapseKeepingMaxConfidence) {
  auto list = parse_term_list(R"({"unit_id":"U","terms":[
      {"surface":"Italia","category":"place","confidence":0.4,"origin":"text_nlp"},
      {"surface":"Italia","category":"subject","confidence":0.2,"origin":"topic_model"},
      {"surface":"Italia","category":"place","confidence":0.9,"origin":"object_detection"}]})");
  ASSERT_EQ(list.terms.size(), 2u);
  EXPECT_DOUBLE_EQ(*list.terms[0].confidence, 0.9);
  EXPECT_EQ(list.terms[0].origin, TermOrigin::TextNlp);
}

TEST(TermList, SchemaViolations) {
  for (const char* bad : {
           R"([])",
           R"({"terms":[]})",
           R"({"unit_id":"U"})",
           R"({"unit_id":"U","terms":[{"surface":"x","category":"event"}]})",
           R"({"unit_id":"U","terms":[{"surface":"x","category":"place","origin":"guess"}]})",
           R"({"unit_id":"U","terms":[{"surface":"x","category":"place","confidence":1.5}]})",
           R"({"unit_id":"U","terms":[{"surface":"  ","category":"place"}]})",
           R"({"unit_id":"U","terms":[],"extra":1})",
           R"({"unit_id":"U","terms":[{"surface":"x","category":"place","lang":"it"}]})",
           R"(not json)",
       }) {
    try {
      parse_term_list(bad);
      ADD_FAILURE() << "accepted: " << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::SchemaViolation) << bad;
    }
  }
}

TEST(TermList, WriteParseRoundTripOnGeneratedLists) {
  std::mt19937 rng(7);
  const char* surfaces[] = {"Italia", "Svizzera", "Partito Comunista Italiano", "Emigrazione", "Zürich", "\"q\""};
  for (int n = 0; n < 200; ++n) {
    TermList list;
    list.unit_id = "U" + std::to_string(n);
    std::set<std::pair<std::string, int>> used;
    int count = static_cast<int>(rng() % 6);
    for (int i = 0; i < count; ++i) {
      ExtractedTerm t;
      t.surface = surfaces[rng() % 6];
      t.category = static_cast<TermCategory>(rng() % 4);
      if (!used.emplace(t.surface, static_cast<int>(t.category)).second) continue;
      t.origin = static_cast<TermOrigin>(rng() % 4);
      if (rng() % 2) t.confidence = static_cast<double>(rng() % 1001) / 1000.0;
      list.terms.push_back(t);
    }
    EXPECT_EQ(parse_term_list(write_term_list(list)), list);
  }
}
