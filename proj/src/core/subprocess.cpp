#include "dms/core/subprocess.hpp"

#include <fcntl.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cstring>

#include "dms/core/error.hpp"
#include "dms/core/fs.hpp"

extern char** environ;

namespace dms {

std::string ProcessResult::stderr_tail(std::size_t max_bytes) const {
  if (stderr_text.size() <= max_bytes) return stderr_text;
  return stderr_text.substr(stderr_text.size() - max_bytes);
}

std::vector<std::string> shell_command(const std::string& command) {
  return {"/bin/sh", "-c", command + " \"$@\"", "sh"};
}

ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::map<std::string, std::string>& extra_env,
                          const std::filesystem::path& scratch_dir) {
  if (argv.empty()) throw InvalidArgument("empty command");
  static std::atomic<unsigned> counter{0};
  const auto tag = std::to_string(::getpid()) + "." + std::to_string(counter++);
  std::filesystem::create_directories(scratch_dir);
  const auto out_path = scratch_dir / ("stdout." + tag);
  const auto err_path = scratch_dir / ("stderr." + tag);

  std::map<std::string, std::string> env;
  for (char** e = environ; *e; ++e) {
    std::string kv(*e);
    auto eq = kv.find('=');
    if (eq != std::string::npos) env[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  for (const auto& [k, v] : extra_env) env[k] = v;
  std::vector<std::string> env_strings;
  for (const auto& [k, v] : env) env_strings.push_back(k + "=" + v);
  std::vector<char*> envp;
  for (auto& s : env_strings) envp.push_back(s.data());
  envp.push_back(nullptr);

  std::vector<std::string> args = argv;
  std::vector<char*> cargv;
  for (auto& a : args) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_addopen(&actions, STDIN_FILENO, "/dev/null", O_RDONLY, 0);
  posix_spawn_file_actions_addopen(&actions, STDOUT_FILENO, out_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  posix_spawn_file_actions_addopen(&actions, STDERR_FILENO, err_path.c_str(),
                                   O_WRONLY | O_CREAT | O_TRUNC, 0644);
  pid_t pid = 0;
  int rc = posix_spawnp(&pid, cargv[0], &actions, nullptr, cargv.data(), envp.data());
  posix_spawn_file_actions_destroy(&actions);
  if (rc != 0) throw IoError("cannot start '" + argv[0] + "': " + std::strerror(rc));

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0) {
    if (errno != EINTR) throw IoError("waitpid failed for '" + argv[0] + "'");
  }

  ProcessResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
  result.stdout_text = read_file(out_path);
  result.stderr_text = read_file(err_path);
  std::error_code ec;
  std::filesystem::remove(out_path, ec);
  std::filesystem::remove(err_path, ec);
  return result;
}

}  // namespace dms
