#pragma once

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cli {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the tool with stderr discarded and returns its exit status and stdout.
// `env` is prepended as shell assignments, e.g. "PRBDIM_THREADS=2".
inline Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(PRBDIM_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

inline std::string scenario(const std::string& name) {
  return std::string(PRBDIM_SCENARIO_DIR) + "/" + name + ".scenario";
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("prbdim_test_" + name)).string();
}

// Data rows of a CSV text, split on commas; comment lines and the header skipped.
inline std::vector<std::vector<std::string>> rows(const std::string& csv, std::string* header = nullptr) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(csv);
  bool seen_header = false;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    if (!seen_header) {
      seen_header = true;
      if (header) *header = line;
      continue;
    }
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    out.push_back(cells);
  }
  return out;
}

}  // namespace cli
