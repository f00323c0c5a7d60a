#include <catch_amalgamated.hpp>

#include "diffield/error.hpp"
#include "diffield/expr.hpp"
#include "diffield/ratfun.hpp"
#include "support.hpp"

using namespace diffield;

namespace {

const std::vector<std::string> kZ = {"z"};
const std::vector<std::string> kXYZ = {"x", "y", "z"};

RatFun q(const std::string& s, const std::vector<std::string>& names = kZ) {
  return parse_expr(s, names);
}

MPoly poly(const std::string& s, const std::vector<std::string>& names = kZ) {
  RatFun u = q(s, names);
  REQUIRE(u.is_polynomial());
  return u.num();
}

std::string str(const RatFun& u, const std::vector<std::string>& names = kZ) {
  return to_string(u, names);
}

}  // namespace

TEST_CASE("normalize cancels common factors and content") {
  CHECK(str(RatFun::normalize(poly("z^2 - 1"), poly("z - 1"))) == "z + 1");
  CHECK(str(RatFun::normalize(poly("2*z"), poly("4"))) == "1/2*z");
  CHECK(RatFun::normalize(poly("0"), poly("z^3")).is_zero());
  CHECK(str(RatFun::normalize(poly("0"), poly("z^3"))) == "0");
  CHECK_THROWS_MATCHES(RatFun::normalize(poly("z"), MPoly(1)), Error,
                       Catch::Matchers::Predicate<Error>(
                           [](const Error& e) { return e.kind() == ErrorKind::ZeroDenominator; }));
}

TEST_CASE("denominator is monic in the term order") {
  RatFun u = RatFun::normalize(poly("3*z"), poly("6*z^2 + 3"));
  CHECK(u.den().leading_coeff() == 1);
  CHECK(str(u) == "1/2*z/(z^2 + 1/2)");
}

TEST_CASE("field arithmetic examples") {
  CHECK(str(q("1/z") + q("1/(z+1)")) == "(2*z + 1)/(z^2 + z)");
  CHECK((q("z^2 + 3") * q("0")).is_zero());
  CHECK(str(q("z^2 - 1") / q("z - 1")) == "z + 1");
  CHECK_THROWS_AS(q("z") / q("0"), Error);
}

TEST_CASE("gcd examples") {
  CHECK(str(RatFun(gcd(poly("z^2 - 1"), poly("z^2 - 2*z + 1")))) == "z - 1");
  CHECK(str(RatFun(gcd(poly("3*z^2 + 6"), MPoly(1)))) == "z^2 + 2");
  CHECK(gcd(MPoly(1), MPoly(1)).is_zero());
  CHECK(str(RatFun(gcd(poly("x^2*y - x*y^2", kXYZ), poly("x^3 - x*y^2", kXYZ))), kXYZ) ==
        "x*y - x^2");
}

TEST_CASE("gcd recovers a planted common factor") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 3;
    MPoly g = gen.nonzero_poly(n, 3, 3);
    // a is linear, hence irreducible; b is chosen so that a does not divide it,
    // which makes a and b coprime.
    MPoly a = MPoly::variable(n, gen.uniform(0, 2)) + gen.nonzero_poly(n, 2, 1);
    while (a.total_degree() != 1) a = MPoly::variable(n, gen.uniform(0, 2)) + gen.nonzero_poly(n, 2, 1);
    MPoly b = gen.nonzero_poly(n, 3, 3);
    if (divide_exact(b, a)) continue;
    MPoly got = gcd(g * a, g * b);
    INFO("trial " << trial);
    CHECK(got == g.monic());
  }
}

TEST_CASE("gcd divides both arguments") {
  testing::Gen gen(7);
  for (int trial = 0; trial < 100; ++trial) {
    MPoly c = gen.poly(3, 2, 2);
    MPoly p = gen.poly(3, 3, 3) * c;
    MPoly r = gen.poly(3, 3, 3) * c;
    MPoly g = gcd(p, r);
    if (p.is_zero() && r.is_zero()) continue;
    CHECK(divide_exact(p, g).has_value());
    CHECK(divide_exact(r, g).has_value());
    if (!g.is_zero()) CHECK(g.leading_coeff() == 1);
  }
}

TEST_CASE("normalize is idempotent") {
  testing::Gen gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    RatFun u = gen.ratfun(3, 3, 3);
    CHECK(RatFun::normalize(u.num(), u.den()) == u);
  }
}

TEST_CASE("arithmetic commutes with evaluation") {
  testing::Gen gen(2024);
  int checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    RatFun a = gen.ratfun(3, 3, 3);
    RatFun b = gen.ratfun(3, 3, 3);
    auto pt = gen.point(3);
    auto av = a.evaluate(pt);
    auto bv = b.evaluate(pt);
    if (!av || !bv) continue;
    ++checked;
    auto sum = (a + b).evaluate(pt);
    auto diff = (a - b).evaluate(pt);
    auto prod = (a * b).evaluate(pt);
    REQUIRE(sum);
    REQUIRE(diff);
    REQUIRE(prod);
    CHECK(*sum == *av + *bv);
    CHECK(*diff == *av - *bv);
    CHECK(*prod == *av * *bv);
    if (!b.is_zero() && *bv != 0) {
      auto quot = (a / b).evaluate(pt);
      REQUIRE(quot);
      CHECK(*quot == *av / *bv);
    }
  }
  CHECK(checked > 900);
}

TEST_CASE("substitution") {
  std::vector<RatFun> images = {q("x + 1", kXYZ), q("1/y", kXYZ), q("z", kXYZ)};
  RatFun u = q("x*y/(x - y^2)", kXYZ);
  RatFun got = substitute(u, images, 3);
  RatFun expected = q("(x + 1)*(1/y)/((x + 1) - 1/y^2)", kXYZ);
  CHECK(got == expected);
}
