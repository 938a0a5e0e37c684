#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

inline constexpr const char* kBundleIndex = "index.json";

// {"files":[{"path","sha256","bytes"}]} over every regular file under dir
// except the index itself, sorted by relative path.
Json build_bundle_index(const std::filesystem::path& dir);
void write_bundle_index(const std::filesystem::path& dir);

// Problems found when checking the files against the index; empty when the
// bundle is intact. Throws IoError when the index is unreadable.
std::vector<std::string> verify_bundle(const std::filesystem::path& dir);

}  // namespace dms
