#include <charconv>
#include <cmath>
#include <set>

#include <json.hpp>

#include "ead2iiif/ead_io.hpp"
#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

double parse_duration(std::string_view text) {
  auto bad = [&]() {
    return Error(ErrorCode::BadDurationFormat,
                 "expected H+:MM:SS, got '" + std::string(text) + "'");
  };
  auto first = text.find(':');
  auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    throw bad();
  }
  auto field = [&](std::string_view digits, bool exactly_two) -> long long {
    if (digits.empty() || (exactly_two && digits.size() != 2)) throw bad();
    long long value = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || value < 0) throw bad();
    return value;
  };
  long long hours = field(text.substr(0, first), false);
  long long minutes = field(text.substr(first + 1, second - first - 1), true);
  long long seconds = field(text.substr(second + 1), true);
  if (minutes >= 60 || seconds >= 60) throw bad();
  return static_cast<double>(3600 * hours + 60 * minutes + seconds);
}

std::string format_duration(long long seconds) {
  if (seconds < 0) throw Error(ErrorCode::BadDurationFormat, "negative duration");
  auto two = [](long long v) { return (v < 10 ? "0" : "") + std::to_string(v); };
  return two(seconds / 3600) + ":" + two((seconds / 60) % 60) + ":" + two(seconds % 60);
}

namespace {

const std::set<std::string, std::less<>> kInventoryFields = {
    "unit_id", "asset_id", "kind", "format", "location",
    "width_px", "height_px", "duration_s", "thumbnail"};

class RowReader {
 public:
  RowReader(const nlohmann::json& row, std::size_t line) : row_(row), line_(line) {}

  Error violation(const std::string& message) const {
    return Error(ErrorCode::SchemaViolation,
                 "inventory line " + std::to_string(line_) + ": " + message);
  }

  std::string required_string(const char* key) const {
    auto value = optional_string(key);
    if (!value || value->empty()) throw violation(std::string("missing required field '") + key + "'");
    return *value;
  }

  std::optional<std::string> optional_string(const char* key) const {
    auto it = row_.find(key);
    if (it == row_.end() || it->is_null()) return std::nullopt;
    if (!it->is_string()) throw violation(std::string("field '") + key + "' must be a string");
    return text::trim(it->get<std::string>());
  }

  std::optional<unsigned> optional_pixels(const char* key) const {
    auto it = row_.find(key);
    if (it == row_.end() || it->is_null()) return std::nullopt;
    if (!it->is_number_unsigned() || it->get<unsigned long long>() == 0 ||
        it->get<unsigned long long>() > 1'000'000) {
      throw violation(std::string("field '") + key + "' must be a positive integer");
    }
    return it->get<unsigned>();
  }

  std::optional<double> optional_duration() const {
    auto it = row_.find("duration_s");
    if (it == row_.end() || it->is_null()) return std::nullopt;
    double seconds = 0;
    if (it->is_number()) {
      seconds = it->get<double>();
    } else if (it->is_string()) {
      try {
        seconds = parse_duration(it->get<std::string>());
      } catch (const Error& e) {
        throw Error(e.code(), "inventory line " + std::to_string(line_) + ": " + e.what());
      }
    } else {
      throw violation("field 'duration_s' must be a number or an HH:MM:SS string");
    }
    if (!std::isfinite(seconds) || seconds <= 0) {
      throw violation("field 'duration_s' must be positive");
    }
    return seconds;
  }

 private:
  const nlohmann::json& row_;
  std::size_t line_;
};

}  // namespace

MediaInventory parse_media_inventory(std::string_view text) {
  MediaInventory inventory;
  std::set<std::pair<std::string, std::string>> seen_assets;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line = text::trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_number;
    if (line.empty() || line.front() == '#') continue;

    nlohmann::json row;
    try {
      row = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::SchemaViolation,
                  "inventory line " + std::to_string(line_number) + ": not a JSON object (" +
                      e.what() + ")");
    }
    RowReader reader(row, line_number);
    if (!row.is_object()) throw reader.violation("record must be a JSON object");
    for (const auto& item : row.items()) {
      if (!kInventoryFields.contains(item.key())) {
        throw reader.violation("unknown field '" + item.key() + "'");
      }
    }

    std::string unit_id = reader.required_string("unit_id");
    MediaAsset asset;
    asset.asset_id = reader.required_string("asset_id");
    auto kind = media_kind_from_string(reader.required_string("kind"));
    if (!kind) throw reader.violation("field 'kind' must be image, video or audio");
    asset.kind = *kind;
    asset.media_format = reader.required_string("format");
    if (asset.media_format.find('/') == std::string::npos) {
      throw reader.violation("field 'format' must be a media type such as image/jpeg");
    }
    asset.location = reader.required_string("location");
    if (!text::is_absolute_uri(asset.location) && asset.location.front() == '/') {
      throw reader.violation("field 'location' must be an absolute URI or a relative path");
    }
    asset.width = reader.optional_pixels("width_px");
    asset.height = reader.optional_pixels("height_px");
    asset.duration = reader.optional_duration();
    asset.thumbnail = reader.optional_string("thumbnail");

    if (asset.kind == MediaKind::Image && (!asset.width || !asset.height)) {
      throw reader.violation("image asset '" + asset.asset_id + "' needs width_px and height_px");
    }
    if (asset.kind != MediaKind::Image && !asset.duration) {
      throw Error(ErrorCode::MissingRequiredExtent,
                  "inventory line " + std::to_string(line_number) + ": " +
                      std::string(to_string(asset.kind)) + " asset '" + asset.asset_id +
                      "' needs duration_s");
    }
    if (!seen_assets.emplace(unit_id, asset.asset_id).second) {
      throw reader.violation("duplicate asset_id '" + asset.asset_id + "' for unit '" + unit_id + "'");
    }
    inventory[unit_id].push_back(std::move(asset));
  }
  return inventory;
}

}  // namespace ead2iiif
