#include "diffield/autgroup.hpp"

#include <random>

#include "diffield/ansatz.hpp"
#include "diffield/error.hpp"

namespace diffield {

AutMap make_translation_aut(const Tower& tower, const std::vector<Rat>& alpha) {
  if (!tower.is_flat()) throw Error(ErrorKind::NotFlat, "translations need a flat tower");
  if (alpha.size() != tower.generator_count())
    throw Error(ErrorKind::InvalidArgument,
                "expected " + std::to_string(tower.generator_count()) + " shifts, got " +
                    std::to_string(alpha.size()));
  std::vector<RatFun> images{tower.var(0)};
  for (std::size_t i = 0; i < alpha.size(); ++i)
    images.push_back(tower.var(i + 1) + tower.constant(alpha[i]));
  return verify_differential(images, tower, 0);
}

RatFun apply(const AutMap& sigma, const RatFun& u) {
  return substitute(u, sigma.images(), sigma.size());
}

AutMap verify_differential(const std::vector<RatFun>& images, const Tower& tower,
                           unsigned samples) {
  const std::size_t n = tower.size();
  if (images.size() != n)
    throw Error(ErrorKind::InvalidArgument, "expected an image for each of the " +
                                                std::to_string(n) + " variables");
  for (const auto& im : images)
    if (im.nvars() != n) throw Error(ErrorKind::InvalidArgument, "image over the wrong tower");
  if (algebraic_rank(images) < n)
    throw Error(ErrorKind::InvalidArgument, "the assignments are not invertible");
  AutMap sigma(images, true);
  auto check = [&](const RatFun& u, const std::string& what) {
    RatFun lhs = differentiate(apply(sigma, u), tower);
    RatFun rhs = apply(sigma, differentiate(u, tower));
    if (!(lhs == rhs))
      throw Error(ErrorKind::NotDifferential,
                  what + ": D(sigma(y)) - sigma(D(y)) = " + tower.print(lhs - rhs));
  };
  for (std::size_t v = 0; v < n; ++v) check(tower.var(v), tower.names()[v]);
  std::mt19937 rng(0xd1ff);
  auto coeff = [&] { return Rat(static_cast<long>(rng() % 9) - 4); };
  for (unsigned s = 0; s < samples; ++s) {
    std::vector<Term> num, den;
    for (int t = 0; t < 3; ++t) {
      Exponents en(n, 0), ed(n, 0);
      for (std::size_t v = 0; v < n; ++v) {
        en[v] = rng() % 3;
        ed[v] = rng() % 2;
      }
      num.push_back({en, coeff()});
      den.push_back({ed, coeff()});
    }
    MPoly d = MPoly::from_terms(n, den);
    if (d.is_zero()) d = MPoly::constant(n, 1);
    check(RatFun::normalize(MPoly::from_terms(n, num), d), "sample " + std::to_string(s));
  }
  return sigma;
}

AutMap compose(const AutMap& a, const AutMap& b) {
  std::vector<RatFun> images;
  for (const auto& im : b.images()) images.push_back(apply(a, im));
  return AutMap(std::move(images), a.verified() && b.verified());
}

namespace {

// Coefficient delta and remainder r with u = delta * y_i + r, r free of
// variables >= i.
std::pair<Rat, RatFun> affine_part(const RatFun& u, std::size_t i) {
  const std::size_t n = u.nvars();
  std::vector<bool> lower(n, false);
  for (std::size_t v = 0; v < i; ++v) lower[v] = true;
  auto fail = [&] {
    return Error(ErrorKind::NotTriangular,
                 "image of variable " + std::to_string(i) + " is not affine over the lower field");
  };
  if (!only_involves(RatFun(u.den()), lower)) throw fail();
  auto coeffs = u.num().coefficients_in(i);
  if (coeffs.size() > 2) throw fail();
  Rat delta = 0;
  if (coeffs.size() == 2) {
    RatFun c = RatFun::normalize(coeffs[1], u.den());
    if (!c.is_constant()) throw fail();
    delta = c.constant_value();
  }
  RatFun r = RatFun::normalize(coeffs.empty() ? MPoly(n) : coeffs[0], u.den());
  if (!only_involves(r, lower) || delta == 0) throw fail();
  return {delta, r};
}

}  // namespace

AutMap inverse(const AutMap& sigma) {
  const std::size_t n = sigma.size();
  std::vector<RatFun> inv;
  for (std::size_t i = 0; i < n; ++i) {
    auto [delta, r] = affine_part(sigma.images()[i], i);
    // tau(y_i) = (y_i - tau(r)) / delta; r only needs tau on lower variables.
    std::vector<RatFun> lower = inv;
    for (std::size_t v = i; v < n; ++v) lower.push_back(RatFun::variable(n, v));
    RatFun tr = substitute(r, lower, n);
    inv.push_back((RatFun::variable(n, i) - tr).scaled(Rat(1) / delta));
  }
  return AutMap(std::move(inv), sigma.verified());
}

bool fixed_field_probe(const std::vector<AutMap>& sigmas, const RatFun& u) {
  for (const auto& s : sigmas)
    if (!(apply(s, u) == u)) return false;
  return true;
}

TriangularData verify_triangular(const AutMap& sigma, const Tower& tower) {
  if (sigma.size() != tower.size())
    throw Error(ErrorKind::InvalidArgument, "map and tower sizes differ");
  TriangularData out;
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    try {
      auto [delta, r] = affine_part(sigma.images()[i], i);
      out.delta.push_back(delta);
      out.shift.push_back(r);
    } catch (const Error&) {
      throw Error(ErrorKind::NotTriangular, "sigma(" + tower.names()[i] + ") = " +
                                                tower.print(sigma.images()[i]) +
                                                " is not delta*" + tower.names()[i] +
                                                " plus a lower-field element");
    }
  }
  return out;
}

}  // namespace diffield
