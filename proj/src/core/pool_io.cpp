#include "dms/core/pool_io.hpp"

#include <fstream>
#include <sstream>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"

namespace dms {

void write_pool(const std::filesystem::path& manifest_path, const DataPool& pool) {
  const auto ids_name = manifest_path.stem().string() + ".ids.txt";
  std::string ids;
  for (const auto& id : pool.sample_ids) {
    ids += id;
    ids += '\n';
  }
  write_file_atomic(manifest_path.parent_path() / ids_name, ids);
  Json j = pool;
  j["sample_ids_file"] = ids_name;
  write_file_atomic(manifest_path, j.dump(2) + "\n");
}

DataPool read_pool(const std::filesystem::path& manifest_path) {
  Json j;
  try {
    j = Json::parse(read_file(manifest_path));
  } catch (const Json::parse_error& e) {
    throw ParseError("malformed pool manifest " + manifest_path.string() + ": " + e.what());
  }
  DataPool pool;
  try {
    pool = j.get<DataPool>();
  } catch (const Json::exception& e) {
    throw ParseError("invalid pool manifest " + manifest_path.string() + ": " + e.what());
  }
  if (auto it = j.find("sample_ids_file"); it != j.end()) {
    std::istringstream in(read_file(manifest_path.parent_path() / it->get<std::string>()));
    std::string line;
    pool.sample_ids.clear();
    while (std::getline(in, line)) {
      if (!line.empty()) pool.sample_ids.push_back(line);
    }
  }
  return pool;
}

}  // namespace dms
