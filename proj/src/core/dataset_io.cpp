#include "dms/core/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"

namespace dms {

std::string generated_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", kGeneratedIdWidth, index);
  return buf;
}

Dataset parse_dataset(std::istream& in) {
  Dataset ds;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), line_no);
    }
    Sample s;
    try {
      s = j.get<Sample>();
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no);
    } catch (const Json::exception& e) {
      throw ParseError(e.what(), line_no);
    }
    if (s.id.empty()) s.id = generated_id(ds.samples.size());
    ds.samples.push_back(std::move(s));
  }
  return ds;
}

Dataset load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open dataset " + path.string());
  return parse_dataset(in);
}

std::string serialize_sample(const Sample& sample) { return Json(sample).dump(); }

std::string serialize_dataset(const Dataset& dataset) {
  std::string out;
  for (const auto& s : dataset.samples) {
    out += serialize_sample(s);
    out += '\n';
  }
  return out;
}

void write_dataset(const std::filesystem::path& path, const Dataset& dataset) {
  write_file_atomic(path, serialize_dataset(dataset));
}

}  // namespace dms
