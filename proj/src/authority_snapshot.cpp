#include <array>

#include "ead2iiif/enrichment.hpp"
#include "ead2iiif/error.hpp"
#include "ead2iiif/text.hpp"

namespace ead2iiif {

namespace {

constexpr std::array<std::string_view, 5> kColumns = {"surface", "category", "canonical_label",
                                                     "identifier", "source"};

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    cells.push_back(text::trim(line.substr(pos, tab == std::string_view::npos ? tab : tab - pos)));
    if (tab == std::string_view::npos) break;
    pos = tab + 1;
  }
  return cells;
}

}  // namespace

SnapshotResolver::SnapshotResolver(std::string source_name, std::vector<Row> rows)
    : source_(std::move(source_name)) {
  for (auto& row : rows) {
    // First row wins on duplicate keys so lookups stay deterministic.
    index_.emplace(std::make_pair(text::casefold(row.surface), row.category), std::move(row.record));
  }
}

std::vector<std::shared_ptr<SnapshotResolver>> SnapshotResolver::load(std::string_view tsv) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<Row>> by_source;
  bool header_seen = false;
  std::size_t line_number = 0;
  std::size_t pos = 0;
  while (pos <= tsv.size()) {
    auto end = tsv.find('\n', pos);
    if (end == std::string_view::npos) end = tsv.size();
    std::string_view line = tsv.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_number;
    if (text::trim(line).empty() || line.front() == '#') continue;

    auto where = "snapshot line " + std::to_string(line_number) + ": ";
    auto cells = split_tabs(line);
    if (!header_seen) {
      if (cells.size() != kColumns.size() || !std::equal(cells.begin(), cells.end(), kColumns.begin())) {
        throw Error(ErrorCode::SchemaViolation,
                    where + "header must be surface, category, canonical_label, identifier, source");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != kColumns.size()) {
      throw Error(ErrorCode::SchemaViolation, where + "expected 5 tab-separated columns, got " +
                                                  std::to_string(cells.size()));
    }
    auto category = category_from_interchange(cells[1]);
    if (!category) throw Error(ErrorCode::SchemaViolation, where + "unknown category '" + cells[1] + "'");
    if (cells[0].empty() || cells[2].empty() || cells[4].empty()) {
      throw Error(ErrorCode::SchemaViolation, where + "surface, canonical_label and source are required");
    }
    Row row{cells[0], *category, {cells[2], std::nullopt, cells[4]}};
    if (!cells[3].empty()) {
      if (!text::is_http_uri(cells[3])) {
        throw Error(ErrorCode::SchemaViolation, where + "identifier '" + cells[3] + "' is not an http(s) URI");
      }
      row.record.identifier = cells[3];
    }
    if (!by_source.contains(row.record.source)) order.push_back(row.record.source);
    by_source[row.record.source].push_back(std::move(row));
  }

  std::vector<std::shared_ptr<SnapshotResolver>> resolvers;
  for (const auto& source : order) {
    resolvers.push_back(std::make_shared<SnapshotResolver>(source, std::move(by_source[source])));
  }
  return resolvers;
}

std::vector<std::shared_ptr<SnapshotResolver>> SnapshotResolver::load_file(const std::filesystem::path& path) {
  try {
    return load(text::read_file(path));
  } catch (const Error& e) {
    throw e.with_context(path.string());
  }
}

std::optional<AuthorityRecord> SnapshotResolver::lookup(std::string_view surface,
                                                        TermCategory category) const {
  auto hit = index_.find({text::casefold(text::trim(surface)), category});
  if (hit == index_.end()) return std::nullopt;
  return hit->second;
}

}  // namespace ead2iiif
