#include <gtest/gtest.h>

#include <httplib.h>
#include <json.hpp>

#include <mutex>

#include "ead2iiif/error.hpp"
#include "ead2iiif/publisher.hpp"
#include "ead2iiif/text.hpp"
#include "support/fixture.hpp"

using namespace ead2iiif;

namespace {

class PublisherTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::filesystem::copy(fixture::pci() / "golden" / "site", site_.path(),
                          std::filesystem::copy_options::recursive);
    config_.root_dir = site_.path();
    config_.port = 0;
    config_.media_dir = fixture::pci() / "media";
    config_.request_log = [this](const std::string& line) {
      std::lock_guard lock(log_mutex_);
      log_.push_back(line);
    };
  }

  httplib::Client client(const ServerHandle& handle) {
    httplib::Client c("127.0.0.1", handle.port());
    c.set_connection_timeout(std::chrono::seconds(5));
    return c;
  }

  std::size_t logged() {
    std::lock_guard lock(log_mutex_);
    return log_.size();
  }

  fixture::TempDir site_{"publish"};
  ServerConfig config_;
  std::mutex log_mutex_;
  std::vector<std::string> log_;
};

}  // namespace

TEST(ContentType, ByExtension) {
  EXPECT_EQ(content_type_for("/manifest/a.json"),
            "application/ld+json;profile=\"http://iiif.io/api/presentation/3/context.json\"");
  EXPECT_EQ(content_type_for("/ead/a.XML"), "application/xml");
  EXPECT_EQ(content_type_for("/media/a.mp4"), "video/mp4");
  EXPECT_EQ(content_type_for("/media/a.jpg"), "image/jpeg");
  EXPECT_EQ(content_type_for("/media/a.d/noext"), "application/octet-stream");
}

TEST(BindAddress, Parsing) {
  EXPECT_EQ(parse_bind_address("127.0.0.1:5501"), std::make_pair(std::string("127.0.0.1"), 5501));
  EXPECT_EQ(parse_bind_address("[::1]:0"), std::make_pair(std::string("::1"), 0));
  for (const char* bad : {"localhost", ":80", "h:", "h:x", "h:70000", "h:-1"}) {
    EXPECT_THROW(parse_bind_address(bad), Error) << bad;
  }
}

TEST_F(PublisherTest, ServesFilesByteIdenticalWithCors) {
  auto handle = serve(config_);
  EXPECT_GT(handle.port(), 0);
  EXPECT_EQ(handle.base_url(), "http://127.0.0.1:" + std::to_string(handle.port()));
  auto c = client(handle);
  for (const char* path : {"/collection/pci-unitefilm.json", "/manifest/il8600011581.json", "/ead/il8600011581.xml"}) {
    auto res = c.Get(path);
    ASSERT_TRUE(res) << path;
    EXPECT_EQ(res->status, 200) << path;
    EXPECT_EQ(res->body, fixture::read(site_.path() / std::string(path).substr(1))) << path;
    EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
    EXPECT_EQ(res->get_header_value("Content-Type"), content_type_for(path));
  }
  // The logger runs after the response is flushed.
  for (int i = 0; i < 100 && logged() < 3; ++i) std::this_thread::sleep_for(std::chrono::milliseconds(10));
  std::lock_guard lock(log_mutex_);
  ASSERT_EQ(log_.size(), 3u);
  EXPECT_NE(log_[0].find("\"GET /collection/pci-unitefilm.json\" 200"), std::string::npos) << log_[0];
}

TEST_F(PublisherTest, CustomOrigin) {
  config_.cors_allow_origin = "https://viewer.example.org";
  auto handle = serve(config_);
  auto res = client(handle).Get("/manifest/il8600011582.json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "https://viewer.example.org");
}

TEST_F(PublisherTest, MissingAndUnsafePathsAre404) {
  auto handle = serve(config_);
  auto c = client(handle);
  for (const char* path : {"/manifest/nope.json", "/manifest", "/manifest/../../etc/passwd", "/%2e%2e/x"}) {
    auto res = c.Get(path);
    ASSERT_TRUE(res) << path;
    EXPECT_EQ(res->status, 404) << path;
    EXPECT_FALSE(res->has_header("Access-Control-Allow-Origin")) << path;
  }
}

TEST_F(PublisherTest, MethodsOtherThanGetAndHead) {
  auto handle = serve(config_);
  auto c = client(handle);
  auto post = c.Post("/manifest/il8600011581.json", "{}", "application/json");
  ASSERT_TRUE(post);
  EXPECT_EQ(post->status, 405);
  EXPECT_EQ(post->get_header_value("Allow"), "GET, HEAD");
  auto options = c.Options("/manifest/il8600011581.json");
  ASSERT_TRUE(options);
  EXPECT_EQ(options->status, 405);

  auto head = c.Head("/manifest/il8600011581.json");
  ASSERT_TRUE(head);
  EXPECT_EQ(head->status, 200);
  EXPECT_TRUE(head->body.empty());
  EXPECT_EQ(head->get_header_value("Content-Length"),
            std::to_string(fixture::read(site_.path() / "manifest/il8600011581.json").size()));
}

TEST_F(PublisherTest, PreflightWhenEnabled) {
  config_.cors_preflight = true;
  auto handle = serve(config_);
  auto res = client(handle).Options("/manifest/il8600011581.json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 204);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Methods"), "GET, HEAD");
}

TEST_F(PublisherTest, CanvasUrisResolveInsideTheirManifest) {
  auto handle = serve(config_);
  auto c = client(handle);
  auto res = c.Get("/manifest/pci-unitefilm-s01-f01/canvas/1");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Access-Control-Allow-Origin"), "*");
  auto j = nlohmann::json::parse(res->body);
  EXPECT_EQ(j["@context"], "http://iiif.io/api/presentation/3/context.json");
  EXPECT_EQ(j["type"], "Canvas");
  EXPECT_EQ(j["id"], "http://127.0.0.1:5501/manifest/pci-unitefilm-s01-f01/canvas/1");
  EXPECT_EQ(j["width"], 1600);

  for (const char* path : {"/manifest/pci-unitefilm-s01-f01/canvas/2", "/manifest/nope/canvas/0",
                           "/manifest/il8600011581/canvas/x"}) {
    auto miss = c.Get(path);
    ASSERT_TRUE(miss);
    EXPECT_EQ(miss->status, 404) << path;
  }
}

TEST_F(PublisherTest, MediaWithRanges) {
  auto handle = serve(config_);
  auto c = client(handle);
  std::string bytes = fixture::read(fixture::pci() / "media" / "emigrazione68.mp4");
  ASSERT_GE(bytes.size(), 4u);
  auto full = c.Get("/media/emigrazione68.mp4");
  ASSERT_TRUE(full);
  EXPECT_EQ(full->status, 200);
  EXPECT_EQ(full->body, bytes);
  EXPECT_EQ(full->get_header_value("Content-Type"), "video/mp4");

  auto part = c.Get("/media/emigrazione68.mp4", {httplib::make_range_header({{0, 3}})});
  ASSERT_TRUE(part);
  EXPECT_EQ(part->status, 206);
  EXPECT_EQ(part->body, bytes.substr(0, 4));
  EXPECT_EQ(part->get_header_value("Access-Control-Allow-Origin"), "*");
}

TEST_F(PublisherTest, StopIsIdempotentAndReleasesThePort) {
  auto handle = serve(config_);
  int port = handle.port();
  handle.stop();
  handle.stop();
  config_.port = port;
  auto again = serve(config_);
  EXPECT_EQ(again.port(), port);
}

TEST_F(PublisherTest, RootMissing) {
  config_.root_dir = site_.path() / "collection";
  try {
    serve(config_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RootMissing);
  }
}

TEST_F(PublisherTest, BindFailure) {
  auto first = serve(config_);
  config_.port = first.port();
  try {
    serve(config_);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BindFailure);
  }
}
