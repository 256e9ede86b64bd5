#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

// Small string and file helpers shared by the parsers and builders.
namespace ead2iiif::text {

std::string trim(std::string_view s);

/// Collapses internal whitespace runs to one space and trims both ends.
std::string normalize_space(std::string_view s);

/// Lower-cases ASCII and the Latin-1 / Latin Extended-A capitals, which
/// covers the Italian and Western European vocabulary the thesauri use.
std::string casefold(std::string_view s);

/// True for `scheme:rest` where scheme matches RFC 3986 and rest is non-empty.
bool is_absolute_uri(std::string_view s);
bool is_http_uri(std::string_view s);

/// Media type registered for the path's extension (case-insensitive), if any.
std::optional<std::string> media_type_for_extension(std::string_view path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace ead2iiif::text
