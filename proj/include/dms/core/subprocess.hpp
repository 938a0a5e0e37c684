#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace dms {

struct ProcessResult {
  int exit_code = 0;
  std::string stdout_text;
  std::string stderr_text;

  // Last `max_bytes` of stderr, for error messages.
  std::string stderr_tail(std::size_t max_bytes = 2048) const;
};

// Runs argv[0] (PATH lookup) with extra environment variables, capturing
// stdout and stderr through files in `scratch_dir`. Throws IoError when the
// process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::map<std::string, std::string>& extra_env,
                          const std::filesystem::path& scratch_dir);

// A command given as a single string runs through /bin/sh with trailing
// arguments forwarded as "$@".
std::vector<std::string> shell_command(const std::string& command);

}  // namespace dms
