#pragma once

#include <filesystem>

#include "dms/core/types.hpp"

namespace dms {

// A pool on disk is a manifest JSON plus a sample-id list file (one id per
// line). The manifest's "sample_ids_file" is relative to the manifest's
// directory.
void write_pool(const std::filesystem::path& manifest_path, const DataPool& pool);
DataPool read_pool(const std::filesystem::path& manifest_path);

}  // namespace dms
