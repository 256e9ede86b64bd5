#include "ead2iiif/publisher.hpp"

#include <httplib.h>

#include <json.hpp>

#include <regex>
#include <thread>

#include "ead2iiif/error.hpp"
#include "ead2iiif/iiif_model.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

namespace {

constexpr const char* kAllowedMethods = "GET, HEAD";

bool is_safe_path(std::string_view path) {
  if (!path.starts_with('/') || path.find('\\') != std::string_view::npos ||
      path.find('\0') != std::string_view::npos) {
    return false;
  }
  std::size_t start = 1;
  while (start <= path.size()) {
    auto end = path.find('/', start);
    if (end == std::string_view::npos) end = path.size();
    if (path.substr(start, end - start) == "..") return false;
    start = end + 1;
  }
  return true;
}

// "/manifest/{slug}/canvas/{n}" -> "manifest/{slug}.json"
std::optional<std::string> canvas_parent(const std::string& path) {
  static const std::regex pattern("^/manifest/([^/]+)/canvas/[0-9]+$");
  std::smatch m;
  if (!std::regex_match(path, m, pattern)) return std::nullopt;
  return "manifest/" + m[1].str() + ".json";
}

}  // namespace

std::pair<std::string, int> parse_bind_address(std::string_view address) {
  auto colon = address.rfind(':');
  if (colon == std::string_view::npos || colon == 0) {
    throw Error(ErrorCode::InvalidConfig, "bind address must be host:port, got '" + std::string(address) + "'");
  }
  std::string host(address.substr(0, colon));
  std::string port_text(address.substr(colon + 1));
  int port = -1;
  try {
    std::size_t used = 0;
    port = std::stoi(port_text, &used);
    if (used != port_text.size()) port = -1;
  } catch (const std::exception&) {
    port = -1;
  }
  if (port < 0 || port > 65535) {
    throw Error(ErrorCode::InvalidConfig, "invalid port in bind address '" + std::string(address) + "'");
  }
  if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  return {host, port};
}

std::string content_type_for(std::string_view path) {
  auto slash = path.find_last_of('/');
  auto dot = path.find_last_of('.');
  std::string ext;
  if (dot != std::string_view::npos && (slash == std::string_view::npos || dot > slash)) {
    ext = path.substr(dot);
    for (auto& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  if (ext == ".json") {
    return "application/ld+json;profile=\"" + std::string(kPresentation3Context) + "\"";
  }
  if (ext == ".xml") return "application/xml";
  return text::media_type_for_extension(path).value_or("application/octet-stream");
}

class Server {
 public:
  explicit Server(ServerConfig config) : config_(std::move(config)) {}

  void start() {
    std::error_code ec;
    for (const char* sub : {"collection", "manifest"}) {
      if (!std::filesystem::is_directory(config_.root_dir / sub, ec)) {
        throw Error(ErrorCode::RootMissing,
                    "site root " + config_.root_dir.string() + " has no " + sub + "/ directory");
      }
    }

    // Plain SO_REUSEADDR: the library default adds SO_REUSEPORT, which would
    // let a second server share a port that is already taken.
    http_.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
    });
    http_.set_pre_routing_handler([this](const httplib::Request& req, httplib::Response& res) {
      handle(req, res);
      return httplib::Server::HandlerResponse::Handled;
    });
    http_.set_post_routing_handler([this](const httplib::Request&, httplib::Response& res) {
      if (res.status >= 200 && res.status < 300) {
        res.set_header("Access-Control-Allow-Origin", config_.cors_allow_origin);
      }
    });
    if (config_.request_log) {
      http_.set_logger([this](const httplib::Request& req, const httplib::Response& res) {
        config_.request_log(req.remote_addr + " \"" + req.method + " " + req.path + "\" " +
                            std::to_string(res.status) + " " + std::to_string(res.body.size()));
      });
    }

    if (config_.port == 0) {
      port_ = http_.bind_to_any_port(config_.host);
    } else if (http_.bind_to_port(config_.host, config_.port)) {
      port_ = config_.port;
    }
    if (port_ <= 0) {
      throw Error(ErrorCode::BindFailure,
                  "cannot bind " + config_.host + ":" + std::to_string(config_.port));
    }
    thread_ = std::thread([this] { http_.listen_after_bind(); });
    http_.wait_until_ready();
  }

  void stop() {
    if (thread_.joinable()) {
      http_.stop();
      thread_.join();
    }
  }

  ~Server() { stop(); }

  int port() const { return port_; }
  const ServerConfig& config() const { return config_; }

 private:
  void handle(const httplib::Request& req, httplib::Response& res) {
    if (req.method == "OPTIONS" && config_.cors_preflight) {
      res.status = 204;
      res.set_header("Access-Control-Allow-Methods", kAllowedMethods);
      res.set_header("Access-Control-Allow-Headers", "*");
      return;
    }
    if (req.method != "GET" && req.method != "HEAD") {
      res.status = 405;
      res.set_header("Allow", kAllowedMethods);
      return;
    }
    auto file = resolve(req.path);
    std::error_code ec;
    if (!file || !std::filesystem::is_regular_file(*file, ec)) {
      if (auto canvas = embedded_canvas(req.path)) {
        res.set_content(*canvas, content_type_for(".json"));
        return;
      }
      res.status = 404;
      res.set_content("not found\n", "text/plain");
      return;
    }
    try {
      res.set_content(text::read_file(*file), content_type_for(req.path));
    } catch (const Error&) {
      res.status = 404;
      res.set_content("not found\n", "text/plain");
    }
  }

  // Canvases live inside their Manifest; serve the matching one on its own.
  std::optional<std::string> embedded_canvas(const std::string& path) const {
    auto parent = canvas_parent(path);
    if (!parent) return std::nullopt;
    try {
      auto manifest = nlohmann::ordered_json::parse(text::read_file(config_.root_dir / *parent));
      auto items = manifest.find("items");
      if (items == manifest.end() || !items->is_array()) return std::nullopt;
      for (const auto& canvas : *items) {
        auto id = canvas.find("id");
        if (id == canvas.end() || !id->is_string() || !id->get<std::string>().ends_with(path)) continue;
        nlohmann::ordered_json out;
        out["@context"] = std::string(kPresentation3Context);
        for (const auto& [key, value] : canvas.items()) out[key] = value;
        return out.dump(2) + "\n";
      }
    } catch (const std::exception&) {
    }
    return std::nullopt;
  }

  std::optional<std::filesystem::path> resolve(const std::string& path) const {
    if (!is_safe_path(path)) return std::nullopt;
    constexpr std::string_view media_prefix = "/media/";
    if (config_.media_dir && path.starts_with(media_prefix)) {
      return *config_.media_dir / path.substr(media_prefix.size());
    }
    return config_.root_dir / path.substr(1);
  }

  ServerConfig config_;
  httplib::Server http_;
  std::thread thread_;
  int port_ = -1;
};

ServerHandle::ServerHandle(std::unique_ptr<Server> server) : server_(std::move(server)) {}
ServerHandle::ServerHandle(ServerHandle&&) noexcept = default;
ServerHandle& ServerHandle::operator=(ServerHandle&&) noexcept = default;
ServerHandle::~ServerHandle() = default;

int ServerHandle::port() const { return server_ ? server_->port() : -1; }

std::string ServerHandle::base_url() const {
  if (!server_) return {};
  return "http://" + server_->config().host + ":" + std::to_string(server_->port());
}

void ServerHandle::stop() {
  if (server_) server_->stop();
}

ServerHandle serve(const ServerConfig& config) {
  auto server = std::make_unique<Server>(config);
  server->start();
  return ServerHandle(std::move(server));
}

}  // namespace ead2iiif
