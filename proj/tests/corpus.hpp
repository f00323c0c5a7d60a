#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "diffield/cli.hpp"

namespace diffield::testing {

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Words of cmd.txt; double quotes group.
inline std::vector<std::string> words(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> std::quoted(w)) out.push_back(w);
  return out;
}

inline std::map<std::string, std::string> read_meta(const std::filesystem::path& p) {
  std::map<std::string, std::string> m;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    auto eq = line.find('=');
    if (eq != std::string::npos) m[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return m;
}

struct ReplayResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

inline std::vector<std::filesystem::path> corpus_cases(const std::filesystem::path& root) {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(root))
    if (e.is_directory()) out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// Runs the case from inside its directory so "--tower tower.twr" resolves.
inline ReplayResult replay(const std::filesystem::path& dir) {
  ReplayResult r;
  r.name = dir.filename().string();
  for (const char* f : {"tower.twr", "cmd.txt", "expected.txt", "meta.txt"})
    if (!std::filesystem::exists(dir / f)) {
      r.detail = std::string("missing ") + f;
      return r;
    }
  auto meta = read_meta(dir / "meta.txt");
  static const std::vector<std::string> origins = {"worked-example", "trivial", "derived"};
  if (std::find(origins.begin(), origins.end(), meta["origin"]) == origins.end()) {
    r.detail = "meta.txt has no recognised origin";
    return r;
  }
  if (meta.count("exit") == 0) {
    r.detail = "meta.txt has no exit code";
    return r;
  }
  auto cwd = std::filesystem::current_path();
  std::filesystem::current_path(dir);
  std::ostringstream out, err;
  int code = run(words(slurp("cmd.txt")), out, err);
  std::filesystem::current_path(cwd);

  std::string got = out.str() + err.str();
  std::string want = slurp(dir / "expected.txt");
  if (std::to_string(code) != meta["exit"]) {
    r.detail = "exit " + std::to_string(code) + ", expected " + meta["exit"];
  } else if (got != want) {
    r.detail = "output differs\n--- expected\n" + want + "--- got\n" + got;
  } else {
    r.pass = true;
  }
  return r;
}

}  // namespace diffield::testing
