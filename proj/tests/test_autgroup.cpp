#include <catch_amalgamated.hpp>

#include "diffield/autgroup.hpp"
#include "diffield/error.hpp"
#include "support.hpp"

using namespace diffield;

namespace {

Tower make(std::vector<GeneratorSpec> gens) {
  TowerSpec s;
  s.generators = std::move(gens);
  return Tower::validate(s);
}

const Tower kTwoLog = make({{"zeta1", "1/z"}, {"zeta2", "1/(z+1)"}});
const Tower kPoly = make({{"zeta1", "z"}});

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

bool same(const AutMap& a, const AutMap& b) { return a.images() == b.images(); }

}  // namespace

TEST_CASE("translations") {
  auto s10 = make_translation_aut(kTwoLog, {1, 0});
  CHECK(s10.images()[1] == kTwoLog.parse("zeta1 + 1"));
  CHECK(s10.images()[2] == kTwoLog.var(2));
  auto id = make_translation_aut(kTwoLog, {0, 0});
  RatFun u = kTwoLog.parse("zeta1*zeta2/(z + zeta1)");
  CHECK(apply(id, u) == u);
  auto s12 = make_translation_aut(kTwoLog, {1, 2});
  CHECK(apply(s12, kTwoLog.parse("zeta1*zeta2")) == kTwoLog.parse("(zeta1 + 1)*(zeta2 + 2)"));
  CHECK(apply(s10, kTwoLog.parse("3*zeta1 + z")) == kTwoLog.parse("3*zeta1 + 3 + z"));
  auto s11 = make_translation_aut(kTwoLog, {1, 1});
  CHECK(apply(s11, kTwoLog.parse("zeta1 - zeta2")) == kTwoLog.parse("zeta1 - zeta2"));
  Tower loglog = make({{"zeta1", "1/z"}, {"zeta2", "1/(z*zeta1)"}});
  CHECK(kind_of([&] { make_translation_aut(loglog, {1, 0}); }) == ErrorKind::NotFlat);
}

TEST_CASE("differential check") {
  auto ok = verify_differential({kPoly.parse("z + 1"), kPoly.parse("zeta1 + z + 1/2")}, kPoly);
  CHECK(ok.size() == 2);
  CHECK(kind_of([&] { verify_differential({kPoly.parse("z + 1"), kPoly.parse("zeta1 + 1")}, kPoly); }) ==
        ErrorKind::NotDifferential);
  auto id = verify_differential({kPoly.var(0), kPoly.var(1)}, kPoly);
  CHECK(id.images()[1] == kPoly.var(1));
}

TEST_CASE("composition and inverse") {
  auto a = make_translation_aut(kTwoLog, {1, 0});
  auto b = make_translation_aut(kTwoLog, {0, 1});
  auto ab = make_translation_aut(kTwoLog, {1, 1});
  CHECK(same(compose(a, b), ab));
  CHECK(same(compose(b, a), ab));
  CHECK(same(compose(ab, inverse(ab)), make_translation_aut(kTwoLog, {0, 0})));
  auto s = verify_differential({kPoly.parse("z + 1"), kPoly.parse("zeta1 + z + 1/2")}, kPoly);
  auto si = inverse(s);
  CHECK(same(compose(s, si), verify_differential({kPoly.var(0), kPoly.var(1)}, kPoly)));
  CHECK(same(compose(si, s), verify_differential({kPoly.var(0), kPoly.var(1)}, kPoly)));
}

TEST_CASE("fixed field probes") {
  auto s10 = make_translation_aut(kTwoLog, {1, 0});
  auto s11 = make_translation_aut(kTwoLog, {1, 1});
  CHECK_FALSE(fixed_field_probe({s10}, kTwoLog.parse("3*zeta1 + z")));
  CHECK(fixed_field_probe({s10, s11}, kTwoLog.var(0)));
  CHECK(fixed_field_probe({s11}, kTwoLog.parse("zeta1 - zeta2")));
}

TEST_CASE("triangular data") {
  auto t = verify_triangular(make_translation_aut(kTwoLog, {2, -1}), kTwoLog);
  CHECK(t.delta == std::vector<Rat>{1, 1, 1});
  CHECK(t.shift[1] == kTwoLog.constant(2));
  CHECK(t.shift[2] == kTwoLog.constant(-1));
  auto s = verify_differential({kPoly.parse("z + 1"), kPoly.parse("zeta1 + z + 1/2")}, kPoly);
  auto d = verify_triangular(s, kPoly);
  CHECK(d.delta == std::vector<Rat>{1, 1});
  CHECK(d.shift[0] == kPoly.constant(1));
  CHECK(d.shift[1] == kPoly.parse("z + 1/2"));
  CHECK(kind_of([] {
          verify_triangular(AutMap::unverified({kPoly.var(0), kPoly.parse("zeta1^2")}), kPoly);
        }) == ErrorKind::NotTriangular);
  CHECK(kind_of([] { inverse(AutMap::unverified({kPoly.var(1), kPoly.var(0)})); }) ==
        ErrorKind::NotTriangular);
}

TEST_CASE("group properties on random input") {
  testing::Gen gen(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rat> a{gen.small_rat(), gen.small_rat()}, b{gen.small_rat(), gen.small_rat()};
    auto sa = make_translation_aut(kTwoLog, a);
    auto sb = make_translation_aut(kTwoLog, b);
    auto sab = make_translation_aut(kTwoLog, {a[0] + b[0], a[1] + b[1]});
    RatFun u = gen.ratfun(3, 3, 2);
    CHECK(apply(sa, apply(sb, u)) == apply(sab, u));
    CHECK(differentiate(apply(sa, u), kTwoLog) == apply(sa, differentiate(u, kTwoLog)));
  }
}
