#include <catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "diffield/cli.hpp"
#include "diffield/error.hpp"
#include "support.hpp"

using namespace diffield;

namespace {

struct Ran {
  int code;
  std::string out, err;
};

Ran invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_tower(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / ("diffield_test_" + name + ".twr");
  std::ofstream(p) << text;
  return p.string();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

const char* kLog = "base z\ngen zeta1 ; D(zeta1) = 1/z\nsubfield K = [zeta1/z]\n";

}  // namespace

TEST_CASE("tower file parsing") {
  auto tf = parse_tower_file("# two logs\nbase z\n\ngen a ; D(a) = 1/z  # log\ngen b;D( b )=1/(z+1)\n"
                             "subfield K = [z, a + b]\n");
  REQUIRE(tf.spec.generators.size() == 2);
  CHECK(tf.spec.generators[1].name == "b");
  CHECK(tf.spec.generators[1].derivative == "1/(z+1)");
  REQUIRE(tf.subfields.size() == 1);
  CHECK(tf.subfields[0].second == std::vector<std::string>{"z", "a + b"});

  CHECK(kind_of([] { parse_tower_file("gen a ; D(a) = 1/z\n"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_tower_file("base w\n"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_tower_file("base z\ngen a D(a) = 1\n"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_tower_file("base z\nfoo\n"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { parse_tower_file("base z\nsubfield K = z\n"); }) == ErrorKind::SyntaxError);
  try {
    parse_tower_file("base z\n\ngen 1a ; D(1a) = 1\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("line 3:", 0) == 0);
  }
}

TEST_CASE("list splitting") {
  CHECK(split_list("[a, f(b, c), d]") == std::vector<std::string>{"a", "f(b, c)", "d"});
  CHECK(split_list("x") == std::vector<std::string>{"x"});
  CHECK(split_list("[]").empty());
  CHECK(kind_of([] { split_list("[a,,b]"); }) == ErrorKind::SyntaxError);
  CHECK(kind_of([] { split_list("[a"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("printer and parser round trip") {
  testing::Gen gen(2024);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    Tower tower = gen.tower(3);
    for (int k = 0; k < 20; ++k, ++checked) {
      RatFun u = gen.ratfun(tower.size(), 4, 4);
      CHECK(tower.parse(tower.print(u)) == u);
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("exit codes") {
  auto log = write_tower("log", kLog);
  CHECK(invoke({"const", "--tower", log, "zeta1"}).code == kNegative);
  CHECK(invoke({"const", "--tower", log, "5"}).code == kSuccess);
  CHECK(invoke({"derive", "--tower", log, "zeta1^2"}).out.rfind("2*zeta1/z\n", 0) == 0);
  CHECK(invoke({"member", "--tower", log, "--subfield", "K", "z"}).code == kSuccess);
  CHECK(invoke({"member", "--tower", log, "--subfield", "[z]", "zeta1"}).code == kNegative);
  CHECK(invoke({"recover", "--tower", log, "--from", "zeta1/z", "--target", "z", "--max-cells", "3"})
            .code == kUnknown);
  CHECK(invoke({"member", "--tower", log, "--subfield", "Nope", "z"}).code == kInputError);
  CHECK(invoke({"frobnicate"}).code == kInputError);
  CHECK(invoke({"derive", "--tower", log}).code == kInputError);
  CHECK(invoke({"derive", "--tower", "/nonexistent/t.twr", "z"}).code == kInputError);

  auto bad = invoke({"derive", "--tower", log, "1/(zeta1 - zeta1)"});
  CHECK(bad.code == kInputError);
  CHECK(bad.err.rfind("error: ", 0) == 0);
  CHECK(bad.out.empty());
}

TEST_CASE("report layout") {
  auto log = write_tower("log", kLog);
  auto r = invoke({"recover", "--tower", log, "--from", "zeta1/z", "--target", "z", "--order", "2",
                   "--deg", "2"});
  REQUIRE(r.code == kSuccess);
  CHECK(r.out.rfind("(x2 + x0*x1)/(x0*x2 - 3*x1^2)\n", 0) == 0);
  auto sep = r.out.find("\n---\n");
  REQUIRE(sep != std::string::npos);
  std::istringstream tail(r.out.substr(sep + 5));
  std::string line;
  while (std::getline(tail, line)) CHECK(line.find('=') != std::string::npos);
}

TEST_CASE("identical invocations give identical output") {
  auto log = write_tower("log", kLog);
  std::vector<std::string> args = {"structure", "--tower", log, "--subfield", "K"};
  auto a = invoke(args), b = invoke(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
}

TEST_CASE("help") {
  auto r = invoke({"--help"});
  CHECK(r.code == kSuccess);
  CHECK(r.out.find("normal-tower") != std::string::npos);
}
