#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "dms/core/types.hpp"

namespace dms {

// Incremental SHA-256. Hex output is lowercase.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  Sha256& update(std::string_view bytes);
  // Length-prefixed update so that ("ab","c") and ("a","bc") hash differently.
  Sha256& field(std::string_view bytes);
  std::string hex();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string sha256_hex(std::string_view bytes);

// Digest of a file's bytes. Throws IoError when unreadable.
std::string file_digest(const std::filesystem::path& path);

// Digest over every regular file under dir: sorted relative paths and contents.
std::string directory_digest(const std::filesystem::path& dir);

// Canonical digest of a dataset: its JSONL serialization.
std::string dataset_digest(const Dataset& dataset);

// Order-independent digest of a pool's contents (sorted sample ids).
std::string pool_content_digest(const std::vector<std::string>& sample_ids);

// First 8 bytes of the SHA-256 of the given parts, as an integer seed.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::string_view> parts);

}  // namespace dms
