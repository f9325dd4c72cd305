#pragma once

// Helpers for driving the command-line binary from tests.

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <sstream>
#include <string>

namespace testsupport {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void spit(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

inline std::filesystem::path make_temp_dir(const std::string& hint) {
  static std::atomic<unsigned> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("tagkit_" + hint + "_" + std::to_string(::getpid()) + "_" +
              std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(dir);
  return dir;
}

/// Runs a shell command, capturing stdout/stderr via redirect files.
inline RunResult run_command(const std::string& command, const std::filesystem::path& dir) {
  auto out_path = dir / "stdout.txt";
  auto err_path = dir / "stderr.txt";
  std::string full = command + " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";
  int status = std::system(full.c_str());
  RunResult result;
  if (status >= 0 && WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  }
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  return result;
}

}  // namespace testsupport
