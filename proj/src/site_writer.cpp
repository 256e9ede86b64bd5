#include <map>

#include "ead2iiif/error.hpp"
#include "ead2iiif/iiif_serialize.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

std::string relative_to_base(std::string_view uri, std::string_view base_uri) {
  std::string prefix = std::string(base_uri) + "/";
  if (!uri.starts_with(prefix) || uri.size() == prefix.size()) {
    throw Error(ErrorCode::UriOutsideBase, "'" + std::string(uri) + "' is not under '" + prefix + "'");
  }
  std::string relative(uri.substr(prefix.size()));
  if (relative.find_first_of("?#") != std::string::npos) {
    throw Error(ErrorCode::UriOutsideBase, "'" + std::string(uri) + "' carries a query or fragment");
  }
  std::size_t start = 0;
  while (start <= relative.size()) {
    auto end = relative.find('/', start);
    if (end == std::string::npos) end = relative.size();
    std::string_view segment(relative.data() + start, end - start);
    if (segment.empty() || segment == "." || segment == "..") {
      throw Error(ErrorCode::UriOutsideBase, "'" + std::string(uri) + "' has an unsafe path segment");
    }
    start = end + 1;
  }
  return relative;
}

std::vector<std::string> write_site(const ResourceSet& set, const EadDocument& ead,
                                    const std::filesystem::path& out_dir) {
  // Resolve every path and render every document before touching the disk.
  std::map<std::string, std::string> files;
  for (const auto& [id, resource] : set.by_id) {
    if (resource.kind != ResourceKind::Collection && resource.kind != ResourceKind::Manifest) continue;
    files[relative_to_base(id, set.base_uri)] = serialize(resource);

    auto unit_id = set.provenance.find(id);
    if (unit_id == set.provenance.end()) continue;
    const ArchivalUnit* unit = find_unit(ead.root, unit_id->second);
    if (!unit) continue;
    for (const auto& link : resource.see_also) {
      if (link.format != "text/xml") continue;
      std::string path = relative_to_base(link.id, set.base_uri);
      if (files.contains(path)) continue;
      EadDocument excerpt{ead.control_header, *unit, ead.namespace_uri};
      files[path] = emit_ead(excerpt);
    }
  }

  std::vector<std::string> written;
  written.reserve(files.size());
  for (const auto& [path, content] : files) {
    text::write_file(out_dir / path, content);
    written.push_back(path);
  }
  return written;
}

}  // namespace ead2iiif
