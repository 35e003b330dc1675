#pragma once

// Runs the CLI binary and captures stdout + exit code (POSIX popen).

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace qaecon::testing {

struct ProcResult {
  int exit_code = -1;
  std::string output;
};

inline ProcResult run_command(const std::string& command) {
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + command);
  ProcResult result;
  std::array<char, 4096> buffer;
  std::size_t n;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.output.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace qaecon::testing
