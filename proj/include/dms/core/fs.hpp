#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace dms {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path);

// Writes via a sibling temp file and rename, so readers never see a partial file.
void write_file_atomic(const fs::path& path, std::string_view content);

// Fresh private directory under the system temp dir; removed on destruction.
class TempDir {
 public:
  explicit TempDir(std::string_view prefix = "dms");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const noexcept { return path_; }

 private:
  fs::path path_;
};

// Job ids may contain '/', which maps to nested-free directory names.
std::string safe_file_name(std::string_view id);

}  // namespace dms
