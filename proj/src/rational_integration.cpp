#include "diffield/rational_integration.hpp"

#include <utility>
#include <vector>

#include "diffield/error.hpp"

namespace diffield {

namespace {

// Dense univariate polynomials over Q, coefficients low to high, trimmed.
using UPoly = std::vector<Rat>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

long deg(const UPoly& p) { return static_cast<long>(p.size()) - 1; }

UPoly add(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  trim(a);
  return a;
}

UPoly neg(UPoly a) {
  for (auto& c : a) c = -c;
  return a;
}

UPoly sub(const UPoly& a, const UPoly& b) { return add(a, neg(b)); }

UPoly mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

UPoly deriv(const UPoly& a) {
  UPoly r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

std::pair<UPoly, UPoly> divmod(UPoly a, const UPoly& b) {
  if (b.empty()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  UPoly q;
  trim(a);
  if (deg(a) >= deg(b)) q.assign(a.size() - b.size() + 1, Rat(0));
  while (!a.empty() && deg(a) >= deg(b)) {
    const std::size_t shift = a.size() - b.size();
    Rat f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  trim(q);
  return {q, a};
}

UPoly exact_div(const UPoly& a, const UPoly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw Error(ErrorKind::InvalidArgument, "inexact univariate division");
  return q;
}

UPoly monic(UPoly a) {
  if (a.empty()) return a;
  Rat lc = a.back();
  for (auto& c : a) c /= lc;
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

// s*a + t*b = c with deg s < deg b, assuming gcd(a, b) = 1.
std::pair<UPoly, UPoly> solve_bezout(const UPoly& a, const UPoly& b, const UPoly& c) {
  UPoly r0 = a, r1 = b, s0 = {Rat(1)}, s1 = {};
  while (!r1.empty()) {
    auto [qq, rr] = divmod(r0, r1);
    UPoly s2 = sub(s0, mul(qq, s1));
    r0 = std::move(r1);
    r1 = std::move(rr);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is the (constant) gcd; s0 * a = r0 mod b.
  Rat inv = Rat(1) / r0.front();
  for (auto& x : s0) x *= inv;
  UPoly s = divmod(mul(s0, c), b).second;
  UPoly t = exact_div(sub(c, mul(s, a)), b);
  return {s, t};
}

UPoly to_upoly(const MPoly& p) {
  UPoly r;
  for (const auto& t : p.terms()) {
    if (r.size() <= t.exps[0]) r.resize(t.exps[0] + 1);
    r[t.exps[0]] += t.coeff;
  }
  trim(r);
  return r;
}

MPoly from_upoly(const UPoly& p, std::size_t nvars) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    Exponents e(nvars, 0);
    e[0] = static_cast<std::uint32_t>(i);
    terms.push_back(Term{std::move(e), p[i]});
  }
  return MPoly::from_terms(nvars, std::move(terms));
}

UPoly integrate_poly(const UPoly& p) {
  UPoly r(p.size() + 1, Rat(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i + 1] = p[i] / static_cast<unsigned long>(i + 1);
  trim(r);
  return r;
}

}  // namespace

HermiteDecomposition hermite_reduce(const RatFun& f) {
  const std::size_t n = f.nvars();
  for (std::size_t v = 1; v < n; ++v)
    if (f.uses(v)) throw Error(ErrorKind::Unsupported, "Hermite reduction needs an element of Q(z)");

  UPoly a = to_upoly(f.num());
  const UPoly d = to_upoly(f.den());
  auto [poly_part, rem] = divmod(a, d);
  UPoly g_num = integrate_poly(poly_part);
  RatFun g = RatFun(from_upoly(g_num, n));
  a = std::move(rem);

  UPoly dminus = ugcd(d, deriv(d));
  const UPoly dstar = exact_div(d, dminus);
  while (deg(dminus) > 0) {
    UPoly dminus2 = ugcd(dminus, deriv(dminus));
    UPoly dminus_star = exact_div(dminus, dminus2);
    UPoly lhs = neg(exact_div(mul(dstar, deriv(dminus)), dminus));
    auto [b, c] = solve_bezout(lhs, dminus_star, a);
    a = sub(c, exact_div(mul(deriv(b), dstar), dminus_star));
    g = g + RatFun::normalize(from_upoly(b, n), from_upoly(dminus, n));
    dminus = std::move(dminus2);
  }
  auto [q2, r2] = divmod(a, dstar);
  g = g + RatFun(from_upoly(integrate_poly(q2), n));
  RatFun h = r2.empty() ? RatFun::constant(n, 0)
                        : RatFun::normalize(from_upoly(r2, n), from_upoly(dstar, n));
  return {std::move(g), std::move(h)};
}

std::optional<RatFun> rational_antiderivative(const RatFun& f) {
  auto h = hermite_reduce(f);
  if (!h.log_part.is_zero()) return std::nullopt;
  // Polynomial part has no constant term and the fractional parts are proper.
  return h.rational_part;
}

}  // namespace diffield
