#include <catch_amalgamated.hpp>

#include "diffield/error.hpp"
#include "diffield/expr.hpp"
#include "diffield/rational_integration.hpp"
#include "diffield/tower.hpp"
#include "support.hpp"

using namespace diffield;

namespace {

Tower make(std::vector<GeneratorSpec> gens) {
  TowerSpec s;
  s.generators = std::move(gens);
  return Tower::validate(s);
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

}  // namespace

TEST_CASE("validation") {
  Tower base = make({});
  CHECK(base.generator_count() == 0);
  CHECK(base.size() == 1);
  CHECK(kind_of([] { make({{"zeta1", "zeta2"}, {"zeta2", "1/z"}}); }) ==
        ErrorKind::ForwardReference);
  CHECK(kind_of([] { make({{"zeta1", "1/w"}}); }) == ErrorKind::UnknownSymbol);
  CHECK(kind_of([] { make({{"zeta1", "1/z"}, {"zeta1", "1"}}); }) == ErrorKind::DuplicateName);
  CHECK(kind_of([] { make({{"e", "e"}}); }) == ErrorKind::ForwardReference);
  CHECK(kind_of([] { make({{"zeta1", "1/(z"}}); }) == ErrorKind::SyntaxError);
}

TEST_CASE("derivatives in the log tower") {
  Tower t = make({{"zeta1", "1/z"}});
  CHECK(t.print(differentiate(t.parse("z^2"), t)) == "2*z");
  RatFun u = t.parse("zeta1/z");
  CHECK(nth_derivative(u, t, 0) == u);
  CHECK(nth_derivative(u, t, 1) == t.parse("(1 - zeta1)/z^2"));
  CHECK(nth_derivative(u, t, 2) == t.parse("(2*zeta1 - 3)/z^3"));
  CHECK(t.is_flat());
}

TEST_CASE("constants") {
  Tower t = make({{"zeta1", "1/z"}});
  CHECK(is_constant(t.constant(5), t));
  CHECK_FALSE(is_constant(t.parse("zeta1"), t));
  Tower bad = make({{"zeta1", "1/z"}, {"zeta2", "1/(z+1)"}, {"zeta3", "1/z + 1/(z+1)"}});
  CHECK(kind_of([&] { is_constant(bad.parse("zeta1 + zeta2 - zeta3"), bad); }) ==
        ErrorKind::InvalidTowerConstant);
}

TEST_CASE("derivation identities on random towers") {
  testing::Gen gen(99);
  const std::vector<std::vector<GeneratorSpec>> towers = {
      {{"a", "1/z"}},
      {{"a", "1/z"}, {"b", "1/(z+1)"}},
      {{"a", "1/z"}, {"b", "1/(z*a)"}},
      {{"a", "-1/(1-z)"}, {"b", "-a/z"}, {"c", "b/(z+2)"}},
  };
  int n = 0;
  for (const auto& spec : towers) {
    Tower t = make(spec);
    for (int trial = 0; trial < 40; ++trial, ++n) {
      RatFun u = gen.ratfun(t.size(), 3, 2);
      RatFun v = gen.ratfun(t.size(), 3, 2);
      Rat a = gen.small_rat(), b = gen.small_rat();
      RatFun du = differentiate(u, t), dv = differentiate(v, t);
      CHECK(differentiate(u.scaled(a) + v.scaled(b), t) == du.scaled(a) + dv.scaled(b));
      CHECK(differentiate(u * v, t) == du * v + u * dv);
      if (!v.is_zero()) CHECK(differentiate(u / v, t) * v * v == du * v - u * dv);
      CHECK(du.nvars() == t.size());
    }
  }
  CHECK(n == 160);
}

TEST_CASE("hermite reduction") {
  Tower t = make({});
  auto q = [&](const char* s) { return t.parse(s); };
  CHECK_FALSE(rational_antiderivative(q("1/z")).has_value());
  CHECK_FALSE(rational_antiderivative(q("1/(z^2+1)")).has_value());
  auto p = rational_antiderivative(q("2*z"));
  REQUIRE(p);
  CHECK(*p == q("z^2"));
  auto r = rational_antiderivative(q("1/z^2"));
  REQUIRE(r);
  CHECK(*r == q("-1/z"));

  testing::Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    RatFun f = gen.ratfun(1, 4, 4);
    auto h = hermite_reduce(f);
    CHECK(differentiate(h.rational_part, t) + h.log_part == f);
    // Planted: derivatives always integrate.
    RatFun df = differentiate(f, t);
    auto w = rational_antiderivative(df);
    REQUIRE(w);
    CHECK(differentiate(*w, t) == df);
    CHECK((*w - f).is_constant());
  }
}
