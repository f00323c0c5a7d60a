#include <catch_amalgamated.hpp>

#include "corpus.hpp"

using namespace diffield::testing;

TEST_CASE("corpus replays byte for byte") {
  auto cases = corpus_cases(DIFFIELD_CORPUS_DIR);
  REQUIRE(cases.size() >= 3);
  for (const auto& dir : cases) {
    auto r = replay(dir);
    INFO(r.name << ": " << r.detail);
    CHECK(r.pass);
  }
}

TEST_CASE("replaying twice gives the same output") {
  auto dir = std::filesystem::path(DIFFIELD_CORPUS_DIR) / "log-structure";
  CHECK(replay(dir).pass);
  CHECK(replay(dir).pass);
}
