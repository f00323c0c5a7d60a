#include "diffield/mpoly.hpp"

#include <algorithm>
#include <cassert>

#include "diffield/error.hpp"
#include "modgcd.hpp"

namespace diffield {

namespace {

Rat pow_rat(const Rat& base, unsigned e) {
  if (e == 0) return Rat(1);
  if (e == 1) return base;
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rat r(num, den);
  r.canonicalize();
  return r;
}

bool divides(const Exponents& small, const Exponents& big) {
  for (std::size_t i = 0; i < small.size(); ++i)
    if (small[i] > big[i]) return false;
  return true;
}

Exponents add_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Exponents sub_exps(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Merge two descending term lists: a + sign * b.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b,
                              bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = compare_exponents(a[i].exps, b[j].exps);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (subtract) out.back().coeff = -out.back().coeff;
    } else {
      Rat s = subtract ? Rat(a[i].coeff - b[j].coeff) : Rat(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back(Term{a[i].exps, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) {
    out.push_back(b[j]);
    if (subtract) out.back().coeff = -out.back().coeff;
  }
  return out;
}

std::vector<Term> term_times(const Term& t, const std::vector<Term>& p) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& q : p) out.push_back(Term{add_exps(t.exps, q.exps), t.coeff * q.coeff});
  return out;
}

MPoly leading_coeff_in(const MPoly& p, std::size_t var) {
  const std::uint32_t d = p.degree(var);
  std::vector<Term> terms;
  for (const auto& t : p.terms()) {
    if (t.exps[var] != d) continue;
    Term c = t;
    c.exps[var] = 0;
    terms.push_back(std::move(c));
  }
  return MPoly::from_terms(p.nvars(), std::move(terms));
}

}  // namespace

int compare_exponents(const Exponents& a, const Exponents& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

MPoly MPoly::constant(std::size_t nvars, const Rat& c) {
  MPoly p(nvars);
  if (c != 0) p.terms_.push_back(Term{Exponents(nvars, 0), c});
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t var, std::uint32_t power) {
  assert(var < nvars);
  MPoly p(nvars);
  Exponents e(nvars, 0);
  e[var] = power;
  p.terms_.push_back(Term{std::move(e), Rat(1)});
  return p;
}

MPoly MPoly::monomial(const Exponents& exps, const Rat& c) {
  MPoly p(exps.size());
  if (c != 0) p.terms_.push_back(Term{exps, c});
  return p;
}

MPoly MPoly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  MPoly p(nvars);
  std::sort(terms.begin(), terms.end(), [](const Term& x, const Term& y) {
    return compare_exponents(x.exps, y.exps) > 0;
  });
  for (auto& t : terms) {
    if (!p.terms_.empty() && compare_exponents(p.terms_.back().exps, t.exps) == 0) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool MPoly::is_constant() const noexcept {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.front().exps)
    if (e != 0) return false;
  return true;
}

Rat MPoly::constant_value() const {
  if (terms_.empty()) return Rat(0);
  assert(is_constant());
  return terms_.front().coeff;
}

std::uint32_t MPoly::degree(std::size_t var) const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exps[var]);
  return d;
}

std::uint32_t MPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) {
    std::uint32_t s = 0;
    for (auto e : t.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

bool MPoly::uses(std::size_t var) const {
  for (const auto& t : terms_)
    if (t.exps[var] != 0) return true;
  return false;
}

std::optional<std::size_t> MPoly::main_variable() const {
  for (std::size_t v = nvars_; v-- > 0;)
    if (uses(v)) return v;
  return std::nullopt;
}

std::vector<bool> MPoly::support() const {
  std::vector<bool> s(nvars_, false);
  for (const auto& t : terms_)
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.exps[i] != 0) s[i] = true;
  return s;
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t var) const {
  std::vector<std::vector<Term>> buckets(is_zero() ? 0 : degree(var) + 1);
  for (const auto& t : terms_) {
    Term c = t;
    c.exps[var] = 0;
    buckets[t.exps[var]].push_back(std::move(c));
  }
  std::vector<MPoly> out;
  out.reserve(buckets.size());
  for (auto& b : buckets) out.push_back(from_terms(nvars_, std::move(b)));
  return out;
}

MPoly MPoly::from_coefficients(const std::vector<MPoly>& coeffs, std::size_t var) {
  const std::size_t n = coeffs.empty() ? 0 : coeffs.front().nvars();
  std::vector<Term> terms;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    for (const auto& t : coeffs[k].terms()) {
      Term c = t;
      c.exps[var] += static_cast<std::uint32_t>(k);
      terms.push_back(std::move(c));
    }
  }
  return from_terms(n, std::move(terms));
}

MPoly MPoly::derivative(std::size_t var) const {
  std::vector<Term> terms;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term d = t;
    d.coeff *= t.exps[var];
    d.exps[var] -= 1;
    terms.push_back(std::move(d));
  }
  // Differentiation keeps the relative order of the surviving terms.
  MPoly p(nvars_);
  p.terms_ = std::move(terms);
  return p;
}

Rat MPoly::evaluate(std::span<const Rat> point) const {
  Rat sum = 0;
  for (const auto& t : terms_) {
    Rat v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.exps[i] != 0) v *= pow_rat(point[i], t.exps[i]);
    sum += v;
  }
  return sum;
}

MPoly MPoly::evaluate_except(std::size_t keep, std::span<const Rat> point) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Rat v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i)
      if (i != keep && t.exps[i] != 0) v *= pow_rat(point[i], t.exps[i]);
    Exponents e(nvars_, 0);
    e[keep] = t.exps[keep];
    terms.push_back(Term{std::move(e), std::move(v)});
  }
  return from_terms(nvars_, std::move(terms));
}

MPoly MPoly::remap(std::size_t nvars, std::span<const std::size_t> target) const {
  std::vector<Term> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.exps[i] != 0) e[target[i]] += t.exps[i];
    terms.push_back(Term{std::move(e), t.coeff});
  }
  return from_terms(nvars, std::move(terms));
}

MPoly MPoly::monic() const {
  if (is_zero() || leading_coeff() == 1) return *this;
  return scaled(Rat(1) / leading_coeff());
}

MPoly MPoly::scaled(const Rat& c) const {
  if (c == 0) return MPoly(nvars_);
  MPoly p = *this;
  for (auto& t : p.terms_) t.coeff *= c;
  return p;
}

MPoly MPoly::pow(unsigned n) const {
  MPoly result = constant(nvars_, 1);
  MPoly base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1;
    if (n > 0) base *= base;
  }
  return result;
}

MPoly MPoly::operator-() const {
  MPoly p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

MPoly& MPoly::operator+=(const MPoly& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    nvars_ = other.nvars_;
    terms_ = other.terms_;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, false);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    *this = -other;
    return *this;
  }
  terms_ = merge_terms(terms_, other.terms_, true);
  return *this;
}

MPoly& MPoly::operator*=(const MPoly& other) {
  *this = *this * other;
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  const std::size_t n = std::max(a.nvars_, b.nvars_);
  if (a.is_zero() || b.is_zero()) return MPoly(n);
  if (a.terms_.size() == 1) {
    MPoly p(n);
    p.terms_ = term_times(a.terms_.front(), b.terms_);
    return p;
  }
  if (b.terms_.size() == 1) {
    MPoly p(n);
    p.terms_ = term_times(b.terms_.front(), a.terms_);
    return p;
  }
  std::vector<Term> terms;
  terms.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) terms.push_back(Term{add_exps(x.exps, y.exps), x.coeff * y.coeff});
  return MPoly::from_terms(n, std::move(terms));
}

bool operator==(const MPoly& a, const MPoly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    if (compare_exponents(a.terms_[i].exps, b.terms_[i].exps) != 0) return false;
  }
  return true;
}

std::optional<MPoly> divide_exact(const MPoly& a, const MPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  const std::size_t n = a.nvars();
  if (a.is_zero()) return MPoly(n);
  if (b.is_constant()) return a.scaled(Rat(1) / b.constant_value());
  const Term& lb = b.leading_term();
  if (b.is_monomial()) {
    std::vector<Term> q;
    q.reserve(a.size());
    for (const auto& t : a.terms()) {
      if (!divides(lb.exps, t.exps)) return std::nullopt;
      q.push_back(Term{sub_exps(t.exps, lb.exps), t.coeff / lb.coeff});
    }
    return MPoly::from_terms(n, std::move(q));
  }
  // Cheap degree rejection.
  for (std::size_t v = 0; v < n; ++v)
    if (b.degree(v) > a.degree(v)) return std::nullopt;

  std::vector<Term> q;
  std::vector<Term> r = a.terms();
  while (!r.empty()) {
    const Term& lt = r.front();
    if (!divides(lb.exps, lt.exps)) return std::nullopt;
    Term t{sub_exps(lt.exps, lb.exps), lt.coeff / lb.coeff};
    r = merge_terms(r, term_times(t, b.terms()), true);
    q.push_back(std::move(t));
  }
  return MPoly::from_terms(n, std::move(q));
}

MPoly divexact(const MPoly& a, const MPoly& b) {
  auto q = divide_exact(a, b);
  if (!q) throw Error(ErrorKind::InvalidArgument, "inexact polynomial division");
  return std::move(*q);
}

MPoly pseudo_remainder(const MPoly& a, const MPoly& b, std::size_t var) {
  const std::uint32_t db = b.degree(var);
  const MPoly lcb = leading_coeff_in(b, var);
  MPoly r = a;
  while (!r.is_zero() && r.degree(var) >= db) {
    const std::uint32_t dr = r.degree(var);
    MPoly lcr = leading_coeff_in(r, var);
    MPoly shift = MPoly::variable(a.nvars(), var, dr - db);
    r = lcb * r - lcr * shift * b;
  }
  return r;
}

MPoly content_in(const MPoly& p, std::size_t var) {
  if (p.is_zero()) return p;
  MPoly g(p.nvars());
  for (const auto& c : p.coefficients_in(var)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant()) return MPoly::constant(p.nvars(), 1);
  }
  return g;
}

namespace {

Exponents monomial_content(const MPoly& p) {
  Exponents e = p.leading_term().exps;
  for (const auto& t : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = std::min(e[i], t.exps[i]);
  return e;
}

bool is_one(const Exponents& e) {
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

MPoly gcd_nonmonomial(const MPoly& a, const MPoly& b);

}  // namespace

MPoly gcd(const MPoly& a, const MPoly& b) {
  const std::size_t n = std::max(a.nvars(), b.nvars());
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return MPoly::constant(n, 1);
  if (a.is_monomial() || b.is_monomial()) {
    const MPoly& mono = a.is_monomial() ? a : b;
    const MPoly& other = a.is_monomial() ? b : a;
    Exponents e = mono.leading_term().exps;
    Exponents f = monomial_content(other);
    for (std::size_t i = 0; i < n; ++i) e[i] = std::min(e[i], f[i]);
    return MPoly::monomial(e, Rat(1));
  }
  if (a == b) return a.monic();

  // Split off the monomial parts; they are cheap and would otherwise show up
  // as a nontrivial gcd the PRS has to find.
  Exponents ma = monomial_content(a), mb = monomial_content(b);
  if (!is_one(ma) || !is_one(mb)) {
    Exponents m(n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i] = std::min(ma[i], mb[i]);
    MPoly ra = is_one(ma) ? a : divexact(a, MPoly::monomial(ma, Rat(1)));
    MPoly rb = is_one(mb) ? b : divexact(b, MPoly::monomial(mb, Rat(1)));
    MPoly g = gcd(ra, rb);
    return is_one(m) ? g : g * MPoly::monomial(m, Rat(1));
  }
  return gcd_nonmonomial(a, b);
}

namespace {

MPoly gcd_nonmonomial(const MPoly& a, const MPoly& b) {
  const std::size_t n = std::max(a.nvars(), b.nvars());
  const auto sa = a.support();
  const auto sb = b.support();
  bool shared = false;
  for (std::size_t i = 0; i < n; ++i) shared = shared || (sa[i] && sb[i]);
  if (!shared) return MPoly::constant(n, 1);
  // A variable only one side uses cannot occur in the gcd.
  for (std::size_t i = 0; i < n; ++i) {
    if (sa[i] && !sb[i]) return gcd(content_in(a, i), b);
    if (sb[i] && !sa[i]) return gcd(a, content_in(b, i));
  }

  // Trial division catches the common case of one input dividing the other.
  if (a.size() >= b.size() && divide_exact(a, b)) return b.monic();
  if (b.size() >= a.size() && divide_exact(b, a)) return a.monic();

  return detail::modular_gcd(a, b);
}

}  // namespace

}  // namespace diffield
