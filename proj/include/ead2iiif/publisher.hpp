#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

namespace ead2iiif {

struct ServerConfig {
  std::filesystem::path root_dir;
  std::string host = "127.0.0.1";
  /// 0 picks an ephemeral port.
  int port = 5501;
  std::string cors_allow_origin = "*";
  /// Served under /media/ when set.
  std::optional<std::filesystem::path> media_dir;
  /// Answer OPTIONS with 204 and CORS preflight headers instead of 405.
  bool cors_preflight = false;
  /// Called once per request with a formatted log line.
  std::function<void(const std::string&)> request_log;
};

/// Splits "host:port"; throws InvalidConfig.
std::pair<std::string, int> parse_bind_address(std::string_view address);

std::string content_type_for(std::string_view path);

class Server;

/// Owns a running server. Destruction stops the listener and joins it.
class ServerHandle {
 public:
  ServerHandle(ServerHandle&&) noexcept;
  ServerHandle& operator=(ServerHandle&&) noexcept;
  ~ServerHandle();

  int port() const;
  /// "http://host:port"
  std::string base_url() const;
  void stop();

 private:
  friend ServerHandle serve(const ServerConfig& config);
  explicit ServerHandle(std::unique_ptr<Server> server);
  std::unique_ptr<Server> server_;
};

/// Starts serving the exported site on a background thread. A Canvas URI
/// ({base}/manifest/{slug}/canvas/{n}) is answered with the Canvas embedded
/// in manifest/{slug}.json. Throws
/// RootMissing when root_dir lacks collection/ or manifest/, BindFailure
/// when the address cannot be bound.
ServerHandle serve(const ServerConfig& config);

}  // namespace ead2iiif
