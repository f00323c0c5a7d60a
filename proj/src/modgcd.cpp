#include "modgcd.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

namespace diffield::detail {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Arithmetic modulo one prime below 2^62.
struct Zp {
  u64 p;
  u64 add(u64 a, u64 b) const { return a + b >= p ? a + b - p : a + b; }
  u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>(static_cast<u128>(a) * b % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  u64 inv(u64 a) const { return pow(a, p - 2); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
    if (n % q == 0) return n == q;
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  Zp f{n};
  for (u64 a : {2, 325, 9375, 28178, 450775, 9780504, 1795265022}) {
    u64 x = f.pow(a % n, d);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = f.mul(x, x);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

u64 nth_prime(std::size_t i) {
  static std::mutex mu;
  static std::vector<u64> primes;
  std::lock_guard<std::mutex> lock(mu);
  while (primes.size() <= i) {
    u64 c = primes.empty() ? (u64(1) << 62) - 1 : primes.back() - 2;
    while (!is_prime(c)) c -= 2;
    primes.push_back(c);
  }
  return primes[i];
}

// ---- univariate, coefficients low to high, no trailing zeros

using UPoly = std::vector<u64>;

void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

u64 eval(const UPoly& a, u64 x, const Zp& f) {
  u64 r = 0;
  for (std::size_t k = a.size(); k-- > 0;) r = f.add(f.mul(r, x), a[k]);
  return r;
}

UPoly scale(UPoly a, u64 c, const Zp& f) {
  if (c == 0) return {};
  for (auto& x : a) x = f.mul(x, c);
  return a;
}

UPoly add(UPoly a, const UPoly& b, const Zp& f) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.add(a[i], b[i]);
  trim(a);
  return a;
}

UPoly mul(const UPoly& a, const UPoly& b, const Zp& f) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = f.add(r[i + j], f.mul(a[i], b[j]));
  trim(r);
  return r;
}

// a = q*b + r; returns q, leaves r in a.
UPoly divmod(UPoly& a, const UPoly& b, const Zp& f) {
  trim(a);
  if (a.size() < b.size()) return {};
  UPoly q(a.size() - b.size() + 1, 0);
  const u64 li = f.inv(b.back());
  for (std::size_t k = a.size() - 1;; --k) {
    const std::size_t shift = k - (b.size() - 1);
    const u64 c = f.mul(a[k], li);
    q[shift] = c;
    if (c)
      for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = f.sub(a[shift + i], f.mul(c, b[i]));
    if (k == b.size() - 1) break;
  }
  trim(a);
  trim(q);
  return q;
}

UPoly monic(UPoly a, const Zp& f) { return a.empty() ? a : scale(std::move(a), f.inv(a.back()), f); }

UPoly ugcd(UPoly a, UPoly b, const Zp& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    divmod(a, b, f);
    std::swap(a, b);
  }
  return monic(std::move(a), f);
}

// ---- multivariate, sparse, descending term order

struct MTerm {
  Exponents e;
  u64 c;
};
using ModPoly = std::vector<MTerm>;

struct Desc {
  bool operator()(const Exponents& a, const Exponents& b) const { return compare_exponents(a, b) > 0; }
};

ModPoly from_map(const std::map<Exponents, u64, Desc>& m) {
  ModPoly out;
  for (const auto& [e, c] : m)
    if (c) out.push_back({e, c});
  return out;
}

bool is_const(const ModPoly& a) {
  return a.size() == 1 && std::all_of(a[0].e.begin(), a[0].e.end(), [](auto x) { return x == 0; });
}

ModPoly scale(ModPoly a, u64 c, const Zp& f) {
  for (auto& t : a) t.c = f.mul(t.c, c);
  return a;
}

ModPoly mul(const ModPoly& a, const ModPoly& b, const Zp& f) {
  std::map<Exponents, u64, Desc> acc;
  for (const auto& s : a)
    for (const auto& t : b) {
      Exponents e(s.e.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = s.e[i] + t.e[i];
      auto& slot = acc[e];
      slot = f.add(slot, f.mul(s.c, t.c));
    }
  return from_map(acc);
}

bool divides_exactly(const ModPoly& a, const ModPoly& b, const Zp& f) {
  std::map<Exponents, u64, Desc> r;
  for (const auto& t : a) r[t.e] = t.c;
  const auto& lb = b.front();
  const u64 li = f.inv(lb.c);
  while (!r.empty()) {
    auto it = r.begin();
    if (it->second == 0) {
      r.erase(it);
      continue;
    }
    Exponents q(lb.e.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      if (it->first[i] < lb.e[i]) return false;
      q[i] = it->first[i] - lb.e[i];
    }
    const u64 c = f.mul(it->second, li);
    for (const auto& t : b) {
      Exponents e(q.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = q[i] + t.e[i];
      auto& slot = r[e];
      slot = f.sub(slot, f.mul(c, t.c));
    }
  }
  return true;
}

// Grouped by the exponents of every variable but v, as univariate in v.
using Grouped = std::map<Exponents, UPoly, Desc>;

Grouped group(const ModPoly& a, std::size_t v) {
  Grouped g;
  for (const auto& t : a) {
    Exponents k = t.e;
    k[v] = 0;
    auto& u = g[k];
    if (u.size() <= t.e[v]) u.resize(t.e[v] + 1, 0);
    u[t.e[v]] = t.c;
  }
  return g;
}

ModPoly ungroup(const Grouped& g, std::size_t v) {
  std::map<Exponents, u64, Desc> m;
  for (const auto& [k, u] : g)
    for (std::size_t d = 0; d < u.size(); ++d) {
      if (!u[d]) continue;
      Exponents e = k;
      e[v] = static_cast<std::uint32_t>(d);
      m[e] = u[d];
    }
  return from_map(m);
}

ModPoly monic(ModPoly a, const Zp& f) { return a.empty() ? a : scale(std::move(a), f.inv(a.front().c), f); }

UPoly content(const Grouped& g, const Zp& f) {
  UPoly c;
  for (const auto& [k, u] : g) {
    c = ugcd(c, u, f);
    if (c.size() == 1) break;
  }
  return c;
}

void divide_all(Grouped& g, const UPoly& c, const Zp& f) {
  if (c.size() == 1) return;
  for (auto& [k, u] : g) u = divmod(u, c, f);
}

ModPoly embed(const UPoly& u, std::size_t nvars, std::size_t v) {
  ModPoly out;
  for (std::size_t d = u.size(); d-- > 0;) {
    if (!u[d]) continue;
    Exponents e(nvars, 0);
    e[v] = static_cast<std::uint32_t>(d);
    out.push_back({e, u[d]});
  }
  return out;
}

std::uint32_t max_degree(const Grouped& g) {
  std::size_t d = 0;
  for (const auto& [k, u] : g) d = std::max(d, u.size() - 1);
  return static_cast<std::uint32_t>(d);
}

// Monic gcd of nonzero a, b over Z_p; vars lists every variable in use.
ModPoly pgcd(const ModPoly& a, const ModPoly& b, const std::vector<std::size_t>& vars, const Zp& f) {
  const std::size_t n = a.front().e.size();
  const std::size_t v = vars.back();
  Grouped ga = group(a, v), gb = group(b, v);
  if (vars.size() == 1) return embed(ugcd(ga.begin()->second, gb.begin()->second, f), n, v);

  const std::vector<std::size_t> rest(vars.begin(), vars.end() - 1);
  const UPoly ca = content(ga, f), cb = content(gb, f);
  divide_all(ga, ca, f);
  divide_all(gb, cb, f);
  const ModPoly c = embed(ugcd(ca, cb, f), n, v);
  const UPoly& lca = ga.begin()->second;
  const UPoly& lcb = gb.begin()->second;
  const UPoly g = ugcd(lca, lcb, f);
  const std::size_t bound = g.size() - 1 + std::min(max_degree(ga), max_degree(gb));
  const ModPoly pa = ungroup(ga, v), pb = ungroup(gb, v);

  Grouped acc;
  UPoly q{1};
  Exponents lead;
  std::size_t points = 0;
  for (u64 alpha = 1; alpha < 100000; ++alpha) {
    if (eval(lca, alpha, f) == 0 || eval(lcb, alpha, f) == 0) continue;
    auto image = [&](const Grouped& gr) {
      ModPoly out;
      for (const auto& [k, u] : gr)
        if (u64 x = eval(u, alpha, f)) out.push_back({k, x});
      return out;
    };
    ModPoly ci = pgcd(image(ga), image(gb), rest, f);
    if (is_const(ci)) return c;
    ci = scale(std::move(ci), eval(g, alpha, f), f);
    const int cmp = points ? compare_exponents(ci.front().e, lead) : -1;
    if (cmp > 0) continue;
    if (cmp < 0) {
      acc.clear();
      for (const auto& t : ci) acc[t.e] = UPoly{t.c};
      q = UPoly{f.neg(alpha), 1};
      lead = ci.front().e;
      points = 1;
    } else {
      const u64 qinv = f.inv(eval(q, alpha, f));
      std::map<Exponents, u64, Desc> target;
      for (const auto& t : ci) target[t.e] = t.c;
      for (const auto& [k, u] : acc) target.try_emplace(k, 0);
      for (const auto& [k, want] : target) {
        UPoly& u = acc[k];
        u64 diff = f.sub(want, eval(u, alpha, f));
        if (diff) u = add(u, scale(q, f.mul(diff, qinv), f), f);
        if (u.empty()) acc.erase(k);
      }
      q = mul(q, UPoly{f.neg(alpha), 1}, f);
      ++points;
    }
    if (points > bound) {
      Grouped cand = acc;
      divide_all(cand, content(cand, f), f);
      ModPoly h = ungroup(cand, v);
      if (divides_exactly(pa, h, f) && divides_exactly(pb, h, f)) return monic(mul(h, c, f), f);
    }
  }
  throw std::logic_error("modular gcd found no good evaluation points");
}

struct IntPoly {
  std::vector<std::pair<Exponents, Int>> terms;  // descending
};

IntPoly integral(const MPoly& a) {
  Int l = 1;
  for (const auto& t : a.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  IntPoly out;
  Int g = 0;
  for (const auto& t : a.terms()) {
    Int c = t.coeff.get_num() * (l / t.coeff.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    out.terms.emplace_back(t.exps, std::move(c));
  }
  for (auto& [e, c] : out.terms) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  return out;
}

ModPoly reduce(const IntPoly& a, const Zp& f) {
  ModPoly out;
  for (const auto& [e, c] : a.terms)
    if (u64 r = mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(f.p))) out.push_back({e, r});
  return out;
}

}  // namespace

MPoly modular_gcd(const MPoly& a, const MPoly& b) {
  const std::size_t n = a.nvars();
  const IntPoly ia = integral(a), ib = integral(b);
  const Int& la = ia.terms.front().second;
  const Int& lb = ib.terms.front().second;
  Int gz;
  mpz_gcd(gz.get_mpz_t(), la.get_mpz_t(), lb.get_mpz_t());

  std::vector<std::size_t> vars;
  {
    auto sa = a.support(), sb = b.support();
    for (std::size_t i = 0; i < n; ++i)
      if (sa[i] || sb[i]) vars.push_back(i);
  }

  std::map<Exponents, Int, Desc> residues;  // in [0, modulus)
  Int modulus = 0;
  Exponents lead;
  auto symmetric = [&](const std::map<Exponents, Int, Desc>& r) {
    std::map<Exponents, Int, Desc> s;
    const Int half = modulus / 2;
    for (const auto& [e, x] : r)
      if (x != 0) s[e] = x > half ? Int(x - modulus) : x;
    return s;
  };

  for (std::size_t i = 0; i < 1000; ++i) {
    const Zp f{nth_prime(i)};
    const unsigned long p = static_cast<unsigned long>(f.p);
    if (mpz_fdiv_ui(la.get_mpz_t(), p) == 0 || mpz_fdiv_ui(lb.get_mpz_t(), p) == 0) continue;
    ModPoly ci = pgcd(reduce(ia, f), reduce(ib, f), vars, f);
    if (is_const(ci)) return MPoly::constant(n, 1);
    ci = scale(std::move(ci), mpz_fdiv_ui(gz.get_mpz_t(), p), f);

    const int cmp = modulus == 0 ? -1 : compare_exponents(ci.front().e, lead);
    if (cmp > 0) continue;
    if (cmp < 0) {
      residues.clear();
      for (const auto& t : ci) residues[t.e] = Int(static_cast<unsigned long>(t.c));
      modulus = Int(p);
      lead = ci.front().e;
      continue;
    }
    auto before = symmetric(residues);
    std::map<Exponents, u64, Desc> img;
    for (const auto& t : ci) img[t.e] = t.c;
    for (const auto& [e, x] : residues) img.try_emplace(e, 0);
    const u64 minv = f.inv(mpz_fdiv_ui(modulus.get_mpz_t(), p));
    for (const auto& [e, cp] : img) {
      Int& r = residues[e];
      u64 rm = mpz_fdiv_ui(r.get_mpz_t(), p);
      u64 k = f.mul(f.sub(cp, rm), minv);
      r += modulus * Int(static_cast<unsigned long>(k));
    }
    modulus *= Int(p);
    auto after = symmetric(residues);
    if (after != before) continue;

    std::vector<Term> terms;
    for (const auto& [e, x] : after) terms.push_back(Term{e, Rat(x)});
    MPoly g = MPoly::from_terms(n, std::move(terms)).monic();
    if (divide_exact(a, g) && divide_exact(b, g)) return g;
  }
  throw std::logic_error("modular gcd did not converge");
}

}  // namespace diffield::detail
