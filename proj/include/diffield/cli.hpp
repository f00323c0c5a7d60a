#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "diffield/tower.hpp"

namespace diffield {

// Tower file:
//
//   # comment
//   base z
//   gen zeta1 ; D(zeta1) = 1/z
//   gen zeta2 ; D(zeta2) = 1/(z*zeta1)
//   subfield K = [zeta1/z, z]
//
// Generators are in file order. Subfield expressions are kept as text until
// the tower validates.
struct TowerFile {
  TowerSpec spec;
  std::vector<std::pair<std::string, std::vector<std::string>>> subfields;
};

/// Throws SyntaxError with a line number.
TowerFile parse_tower_file(std::string_view text);

/// Splits "[a, b(c, d)]" at top-level commas. Brackets are optional.
std::vector<std::string> split_list(std::string_view text);

enum ExitCode : int { kSuccess = 0, kNegative = 1, kUnknown = 2, kInputError = 3 };

/// Runs one command line (without the program name) and returns its exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace diffield
