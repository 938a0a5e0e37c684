#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dms/core/types.hpp"

namespace dms {

// JSON Lines: one {"id","text","media"?,"stats"?} object per line. Samples
// without an id get their zero-padded record index. Non-finite stat values
// (null, "nan", "inf") load as NaN/inf so validation can report them.
//
// Throws IoError when the file cannot be read and ParseError (with line) on
// malformed JSON.
Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::istream& in);

void write_dataset(const std::filesystem::path& path, const Dataset& dataset);
std::string serialize_dataset(const Dataset& dataset);
std::string serialize_sample(const Sample& sample);

// Width of generated ids ("00000042").
inline constexpr int kGeneratedIdWidth = 8;
std::string generated_id(std::size_t index);

}  // namespace dms
