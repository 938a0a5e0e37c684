#include "dms/reports/bundle.hpp"

#include <algorithm>
#include <set>

#include "dms/core/digest.hpp"
#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"

namespace dms {

Json build_bundle_index(const std::filesystem::path& dir) {
  std::vector<std::string> paths;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto rel = fs::relative(e.path(), dir).generic_string();
    if (rel != kBundleIndex) paths.push_back(std::move(rel));
  }
  std::sort(paths.begin(), paths.end());
  Json files = Json::array();
  for (const auto& p : paths) {
    files.push_back({{"path", p}, {"sha256", file_digest(dir / p)}, {"bytes", fs::file_size(dir / p)}});
  }
  return Json{{"files", files}};
}

void write_bundle_index(const std::filesystem::path& dir) {
  write_file_atomic(dir / kBundleIndex, build_bundle_index(dir).dump(2) + "\n");
}

std::vector<std::string> verify_bundle(const std::filesystem::path& dir) {
  const auto index = Json::parse(read_file(dir / kBundleIndex), nullptr, false);
  if (index.is_discarded() || !index.contains("files")) throw IoError("bundle index is malformed");
  std::vector<std::string> problems;
  std::set<std::string> listed;
  for (const auto& f : index.at("files")) {
    const auto path = f.at("path").get<std::string>();
    listed.insert(path);
    if (!fs::exists(dir / path)) {
      problems.push_back("missing " + path);
    } else if (file_digest(dir / path) != f.at("sha256").get<std::string>()) {
      problems.push_back("digest mismatch " + path);
    }
  }
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    auto rel = fs::relative(e.path(), dir).generic_string();
    if (rel != kBundleIndex && !listed.count(rel)) problems.push_back("unlisted " + rel);
  }
  return problems;
}

}  // namespace dms
