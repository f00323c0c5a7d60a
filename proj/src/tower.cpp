#include "diffield/tower.hpp"

#include <algorithm>

#include "diffield/error.hpp"
#include "diffield/expr.hpp"

namespace diffield {

Tower Tower::validate(const TowerSpec& spec) {
  Tower t;
  t.spec_ = spec;
  t.names_.push_back(spec.base);
  for (const auto& g : spec.generators) {
    if (std::find(t.names_.begin(), t.names_.end(), g.name) != t.names_.end())
      throw Error(ErrorKind::DuplicateName, "duplicate name '" + g.name + "'");
    t.names_.push_back(g.name);
  }
  const std::size_t n = t.names_.size();
  t.derivation_.push_back(RatFun::constant(n, 1));
  for (std::size_t i = 0; i < spec.generators.size(); ++i) {
    const auto& g = spec.generators[i];
    for (const auto& ref : referenced_names(g.derivative)) {
      auto it = std::find(t.names_.begin(), t.names_.end(), ref);
      if (it == t.names_.end())
        throw Error(ErrorKind::UnknownSymbol,
                    "D(" + g.name + ") refers to unknown symbol '" + ref + "'");
      const auto idx = static_cast<std::size_t>(it - t.names_.begin());
      if (idx == i + 1)
        throw Error(ErrorKind::ForwardReference,
                    "D(" + g.name + ") refers to " + g.name +
                        " itself; only antiderivative generators are supported");
      if (idx > i + 1)
        throw Error(ErrorKind::ForwardReference,
                    "D(" + g.name + ") refers to later generator '" + ref + "'");
    }
    t.derivation_.push_back(parse_expr(g.derivative, t.names_));
  }
  return t;
}

std::optional<std::size_t> Tower::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

RatFun Tower::parse(std::string_view text) const { return parse_expr(text, names_); }

std::string Tower::print(const RatFun& u) const { return to_string(u, names_); }

bool Tower::is_flat() const {
  std::vector<bool> base(size(), false);
  base[0] = true;
  for (std::size_t i = 1; i < size(); ++i)
    if (!only_involves(derivation_[i], base)) return false;
  return true;
}

Tower Tower::prefix(std::size_t nvars) const {
  TowerSpec s;
  s.base = spec_.base;
  s.generators.assign(spec_.generators.begin(), spec_.generators.begin() + (nvars - 1));
  return validate(s);
}

bool only_involves(const RatFun& u, const std::vector<bool>& allowed) {
  const auto s = u.support();
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] && !allowed[i]) return false;
  return true;
}

namespace {

// D applied to a polynomial, as a rational function.
RatFun differentiate_poly(const MPoly& p, std::span<const RatFun> derivation) {
  RatFun acc = RatFun::constant(p.nvars(), 0);
  for (std::size_t v = 0; v < p.nvars(); ++v) {
    if (!p.uses(v) || derivation[v].is_zero()) continue;
    acc += RatFun(p.derivative(v)) * derivation[v];
  }
  return acc;
}

}  // namespace

RatFun differentiate(const RatFun& u, std::span<const RatFun> derivation) {
  RatFun dn = differentiate_poly(u.num(), derivation);
  if (u.den().is_constant()) return dn;
  RatFun dd = differentiate_poly(u.den(), derivation);
  // (N'/D) - (N/D)(D'/D) over a single common denominator.
  const MPoly& n = u.num();
  const MPoly& d = u.den();
  MPoly top = dn.num() * dd.den() * d - n * dd.num() * dn.den();
  MPoly bottom = dn.den() * dd.den() * d * d;
  return RatFun::normalize(std::move(top), std::move(bottom));
}

RatFun differentiate(const RatFun& u, const Tower& tower) {
  return differentiate(u, tower.derivation());
}

RatFun nth_derivative(const RatFun& u, const Tower& tower, unsigned n) {
  RatFun v = u;
  for (unsigned i = 0; i < n; ++i) v = differentiate(v, tower);
  return v;
}

bool is_constant(const RatFun& u, const Tower& tower) {
  if (!differentiate(u, tower).is_zero()) return false;
  if (u.is_constant()) return true;
  throw Error(ErrorKind::InvalidTowerConstant,
              "D(" + tower.print(u) + ") = 0 but it is not a rational number; the declared "
              "generators have a new constant");
}

}  // namespace diffield
