#include "diffield/ratfun.hpp"

#include <algorithm>

#include "diffield/error.hpp"

namespace diffield {

RatFun::RatFun(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.nvars(), 1)) {}

RatFun RatFun::normalize(MPoly num, MPoly den) {
  if (den.is_zero()) throw Error(ErrorKind::ZeroDenominator, "zero denominator");
  const std::size_t n = std::max(num.nvars(), den.nvars());
  if (num.is_zero()) return RatFun(MPoly(n), MPoly::constant(n, 1), 0);
  if (!den.is_constant()) {
    MPoly g = gcd(num, den);
    if (!g.is_constant()) {
      num = divexact(num, g);
      den = divexact(den, g);
    }
  }
  if (den.leading_coeff() != 1) {
    Rat lc = den.leading_coeff();
    num = num.scaled(Rat(1) / lc);
    den = den.monic();
  }
  return RatFun(std::move(num), std::move(den), 0);
}

RatFun RatFun::coprime(MPoly num, MPoly den) {
  const Rat lc = den.leading_coeff();
  if (lc != 1) {
    num = num.scaled(Rat(1) / lc);
    den = den.monic();
  }
  return RatFun(std::move(num), std::move(den), 0);
}

RatFun RatFun::constant(std::size_t nvars, const Rat& c) { return RatFun(MPoly::constant(nvars, c)); }

RatFun RatFun::variable(std::size_t nvars, std::size_t var) { return RatFun(MPoly::variable(nvars, var)); }

Rat RatFun::constant_value() const { return num_.constant_value() / den_.constant_value(); }

std::vector<bool> RatFun::support() const {
  auto s = num_.support();
  auto d = den_.support();
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = s[i] || d[i];
  return s;
}

std::optional<std::size_t> RatFun::main_variable() const {
  auto a = num_.main_variable();
  auto b = den_.main_variable();
  if (!a) return b;
  if (!b) return a;
  return std::max(*a, *b);
}

RatFun RatFun::inverse() const {
  if (is_zero()) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  Rat lc = num_.leading_coeff();
  return RatFun(den_.scaled(Rat(1) / lc), num_.monic(), 0);
}

RatFun RatFun::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  // Powers of coprime polynomials stay coprime; monic stays monic.
  return RatFun(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)), 0);
}

RatFun RatFun::scaled(const Rat& c) const {
  if (c == 0) return RatFun(MPoly(nvars()), MPoly::constant(nvars(), 1), 0);
  return RatFun(num_.scaled(c), den_, 0);
}

RatFun RatFun::partial(std::size_t var) const {
  if (!den_.uses(var)) return normalize(num_.derivative(var), den_);
  // (N' D - N D') / D^2 with g = gcd(D, D') divided out first; any factor
  // left in common with the top divides D.
  const MPoly dd = den_.derivative(var);
  const MPoly g = gcd(den_, dd);
  const MPoly dg = g.is_constant() ? den_ : divexact(den_, g);
  const MPoly ddg = g.is_constant() ? dd : divexact(dd, g);
  MPoly top = num_.derivative(var) * dg - num_ * ddg;
  if (top.is_zero()) return RatFun(MPoly(nvars()), MPoly::constant(nvars(), 1), 0);
  const MPoly h = gcd(top, den_);
  if (h.is_constant()) return coprime(std::move(top), den_ * dg);
  return normalize(divexact(top, h), divexact(den_ * dg, h));
}

std::optional<Rat> RatFun::evaluate(std::span<const Rat> point) const {
  Rat d = den_.evaluate(point);
  if (d == 0) return std::nullopt;
  return num_.evaluate(point) / d;
}

RatFun RatFun::remap(std::size_t nvars, std::span<const std::size_t> target) const {
  return normalize(num_.remap(nvars, target), den_.remap(nvars, target));
}

RatFun RatFun::operator-() const { return RatFun(-num_, den_, 0); }

RatFun operator+(const RatFun& a, const RatFun& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFun::normalize(a.num_ + b.num_, a.den_);
  if (a.den_.is_constant()) return RatFun(a.num_ * b.den_ + b.num_, b.den_, 0);
  if (b.den_.is_constant()) return RatFun(a.num_ + b.num_ * a.den_, a.den_, 0);
  const MPoly g = gcd(a.den_, b.den_);
  if (g.is_constant()) {
    // Coprime denominators give a reduced sum.
    MPoly den = a.den_ * b.den_;
    MPoly num = a.num_ * b.den_ + b.num_ * a.den_;
    if (num.is_zero()) return RatFun(MPoly(a.nvars()), MPoly::constant(a.nvars(), 1), 0);
    return RatFun::coprime(std::move(num), std::move(den));
  }
  const MPoly ad = divexact(a.den_, g);
  const MPoly bd = divexact(b.den_, g);
  MPoly num = a.num_ * bd + b.num_ * ad;
  if (num.is_zero()) return RatFun(MPoly(a.nvars()), MPoly::constant(a.nvars(), 1), 0);
  const MPoly h = gcd(num, g);
  MPoly den = ad * bd * (h.is_constant() ? g : divexact(g, h));
  if (!h.is_constant()) num = divexact(num, h);
  return RatFun::coprime(std::move(num), std::move(den));
}

RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }

RatFun operator*(const RatFun& a, const RatFun& b) {
  const std::size_t n = std::max(a.nvars(), b.nvars());
  if (a.is_zero() || b.is_zero()) return RatFun(MPoly(n), MPoly::constant(n, 1), 0);
  if (a.den_.is_constant() && b.den_.is_constant()) return RatFun(a.num_ * b.num_, a.den_, 0);
  const MPoly g1 = gcd(a.num_, b.den_);
  const MPoly g2 = gcd(b.num_, a.den_);
  MPoly num = (g1.is_constant() ? a.num_ : divexact(a.num_, g1)) *
              (g2.is_constant() ? b.num_ : divexact(b.num_, g2));
  MPoly den = (g2.is_constant() ? a.den_ : divexact(a.den_, g2)) *
              (g1.is_constant() ? b.den_ : divexact(b.den_, g1));
  return RatFun::coprime(std::move(num), std::move(den));
}

RatFun operator/(const RatFun& a, const RatFun& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero");
  return a * b.inverse();
}

RatFun substitute(const MPoly& p, std::span<const RatFun> images, std::size_t target_nvars) {
  return substitute(RatFun(p), images, target_nvars);
}

RatFun substitute(const RatFun& u, std::span<const RatFun> images, std::size_t target_nvars) {
  const std::size_t n = u.nvars();
  // Homogenize each variable to the same degree in numerator and denominator
  // so the image denominators cancel in the quotient.
  std::vector<std::uint32_t> deg(n, 0);
  for (std::size_t v = 0; v < n; ++v) deg[v] = std::max(u.num().degree(v), u.den().degree(v));

  std::vector<std::vector<MPoly>> num_pow(n), den_pow(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (deg[v] == 0) continue;
    num_pow[v].push_back(MPoly::constant(target_nvars, 1));
    den_pow[v].push_back(MPoly::constant(target_nvars, 1));
    for (std::uint32_t k = 1; k <= deg[v]; ++k) {
      num_pow[v].push_back(num_pow[v].back() * images[v].num());
      den_pow[v].push_back(images[v].den().is_constant() ? den_pow[v].back()
                                                         : den_pow[v].back() * images[v].den());
    }
  }
  auto expand = [&](const MPoly& p) {
    MPoly acc(target_nvars);
    for (const auto& t : p.terms()) {
      MPoly prod = MPoly::constant(target_nvars, t.coeff);
      for (std::size_t v = 0; v < n; ++v) {
        if (deg[v] == 0) continue;
        const std::uint32_t e = t.exps[v];
        if (e != 0) prod *= num_pow[v][e];
        // Canonical denominators that are constant are exactly 1.
        if (!images[v].den().is_constant() && deg[v] - e != 0) prod *= den_pow[v][deg[v] - e];
      }
      acc += prod;
    }
    return acc;
  };
  MPoly top = expand(u.num());
  MPoly bottom = expand(u.den());
  return RatFun::normalize(std::move(top), std::move(bottom));
}

}  // namespace diffield
