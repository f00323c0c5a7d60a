#include "diffield/ansatz.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "diffield/error.hpp"
#include "diffield/expr.hpp"

namespace diffield {

std::size_t Bounds::default_max_cells() {
  if (const char* env = std::getenv("DIFFIELD_MAX_CELLS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 25'000'000;
}

Bounds Bounds::scaled(unsigned factor) const {
  Bounds b = *this;
  b.max_num_degree *= factor;
  b.max_den_degree *= factor;
  b.max_derivative_order *= factor;
  b.escalation.clear();
  return b;
}

std::vector<Bounds> Bounds::ladder() const {
  std::vector<Bounds> out{*this};
  out.front().escalation.clear();
  for (unsigned f : escalation) out.push_back(scaled(f));
  return out;
}

namespace {

struct ExpLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return compare_exponents(a, b) < 0;
  }
};

// Appends one row per monomial of the identity sum_j c_j cols[j] = rhs.
void append_rows(const std::vector<MPoly>& cols, const MPoly& rhs, std::size_t ncols,
                 std::vector<SparseVec>& out) {
  std::map<Exponents, SparseVec, ExpLess> rows;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& t : cols[j].terms()) rows[t.exps].emplace_back(j, t.coeff);
  for (const auto& t : rhs.terms()) rows[t.exps].emplace_back(ncols, t.coeff);
  for (auto& [e, r] : rows) out.push_back(std::move(r));
}

void check_cells(std::size_t nrows, std::size_t ncols, const Bounds& bounds) {
  const std::size_t cells = nrows * std::max<std::size_t>(ncols, 1);
  if (cells > bounds.max_cells)
    throw Error(ErrorKind::BoundsExceeded,
                "linear system of " + std::to_string(nrows) + " x " + std::to_string(ncols) +
                    " exceeds the cap of " + std::to_string(bounds.max_cells) + " cells");
}

MPoly lcm(const MPoly& a, const MPoly& b) {
  if (a.is_constant()) return b;
  if (b.is_constant()) return a;
  if (a == b) return a;
  return a * divexact(b, gcd(a, b));
}

// Exponent vectors in m variables of total degree <= d, by degree and then
// ascending term order.
std::vector<Exponents> monomials_upto(std::size_t m, unsigned d) {
  std::vector<Exponents> out;
  Exponents e(m, 0);
  auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
    if (var == m) {
      out.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[var] = k;
      self(self, var + 1, left - k);
    }
    e[var] = 0;
  };
  rec(rec, 0, d);
  std::stable_sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    unsigned da = 0, db = 0;
    for (auto x : a) da += x;
    for (auto x : b) db += x;
    if (da != db) return da < db;
    return compare_exponents(a, b) < 0;
  });
  return out;
}

MPoly formal_poly(std::size_t m, const std::vector<Exponents>& monos, const SparseVec& vec,
                  std::size_t offset) {
  std::vector<Term> terms;
  for (const auto& [idx, val] : vec) {
    if (idx < offset || idx >= offset + monos.size()) continue;
    terms.push_back(Term{monos[idx - offset], val});
  }
  return MPoly::from_terms(m, std::move(terms));
}

std::string derivative_meaning(const std::string& g, unsigned k) {
  if (k == 0) return g;
  if (k == 1) return "D(" + g + ")";
  return "D^" + std::to_string(k) + "(" + g + ")";
}

// Numeric Jacobian rank at one point, or nullopt if some element is undefined.
std::optional<std::size_t> numeric_rank(const std::vector<RatFun>& elems,
                                        const std::vector<std::size_t>& vars,
                                        const std::vector<Rat>& pt) {
  std::vector<std::vector<Rat>> m;
  for (const auto& u : elems) {
    Rat d = u.den().evaluate(pt);
    if (d == 0) return std::nullopt;
    Rat n = u.num().evaluate(pt);
    std::vector<Rat> row;
    for (std::size_t v : vars) {
      Rat nv = u.num().derivative(v).evaluate(pt);
      Rat dv = u.den().derivative(v).evaluate(pt);
      row.push_back((nv * d - n * dv) / (d * d));
    }
    m.push_back(std::move(row));
  }
  return rank(std::move(m));
}

std::size_t symbolic_rank(std::vector<std::vector<RatFun>> m) {
  if (m.empty()) return 0;
  const std::size_t ncols = m.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
    std::size_t p = m.size();
    for (std::size_t i = r; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      if (p == m.size() || m[i][c].num().size() + m[i][c].den().size() <
                               m[p][c].num().size() + m[p][c].den().size())
        p = i;
    }
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c].is_zero()) continue;
      RatFun f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < ncols; ++j)
        if (!m[r][j].is_zero()) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

LinearSolution solve_polynomial_ansatz(const std::vector<MPoly>& columns, const MPoly& rhs,
                                       const Bounds& bounds) {
  std::vector<SparseVec> rows;
  append_rows(columns, rhs, columns.size(), rows);
  check_cells(rows.size(), columns.size(), bounds);
  return solve_sparse(columns.size(), std::move(rows), true);
}

LinearSolution solve_linear_ansatz(const LinearAnsatz& ansatz, const Bounds& bounds) {
  std::vector<SparseVec> rows;
  for (const auto& eq : ansatz.equations) {
    if (eq.coefficients.size() != ansatz.unknowns)
      throw Error(ErrorKind::InvalidArgument, "equation width does not match the unknown count");
    std::vector<MPoly> dens;
    auto note = [&](const MPoly& d) {
      if (d.is_constant()) return;
      for (const auto& x : dens)
        if (x == d) return;
      dens.push_back(d);
    };
    for (const auto& c : eq.coefficients)
      if (!c.is_zero()) note(c.den());
    if (!eq.rhs.is_zero()) note(eq.rhs.den());
    std::size_t nv = eq.rhs.nvars();
    for (const auto& c : eq.coefficients) nv = std::max(nv, c.nvars());
    MPoly l = MPoly::constant(nv, 1);
    for (const auto& d : dens) l = lcm(l, d);
    std::vector<MPoly> cols;
    cols.reserve(eq.coefficients.size());
    for (const auto& c : eq.coefficients)
      cols.push_back(c.is_zero() ? MPoly(nv) : c.num() * divexact(l, c.den()));
    MPoly rhs = eq.rhs.is_zero() ? MPoly(nv) : eq.rhs.num() * divexact(l, eq.rhs.den());
    append_rows(cols, rhs, ansatz.unknowns, rows);
    check_cells(rows.size(), ansatz.unknowns, bounds);
  }
  return solve_sparse(ansatz.unknowns, std::move(rows), true);
}

std::vector<std::string> formal_names(std::size_t n, const std::string& prefix) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

Witness::Witness(std::vector<std::string> names, std::vector<FormalGenerator> arguments,
                 RatFun expression, RatFun target)
    : names_(std::move(names)),
      arguments_(std::move(arguments)),
      expression_(std::move(expression)),
      target_(std::move(target)) {
  if (names_.size() != arguments_.size() || expression_.nvars() != names_.size())
    throw std::logic_error("witness arity mismatch");
  if (!(evaluate() == target_)) throw std::logic_error("witness does not reproduce its target");
}

RatFun Witness::evaluate() const {
  std::vector<RatFun> images;
  for (const auto& a : arguments_) images.push_back(a.value);
  return substitute(expression_, images, target_.nvars());
}

std::string Witness::to_string() const { return diffield::to_string(expression_, names_); }

std::size_t algebraic_rank(const std::vector<RatFun>& elems) {
  if (elems.empty()) return 0;
  const std::size_t n = elems.front().nvars();
  std::vector<std::size_t> vars;
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& u : elems)
      if (u.uses(v)) {
        vars.push_back(v);
        break;
      }
  const std::size_t full = std::min(elems.size(), vars.size());
  if (full == 0) return 0;

  std::mt19937 rng(0x5eed);
  std::size_t best = 0;
  int good = 0;
  for (int attempt = 0; attempt < 20 && good < 2; ++attempt) {
    std::vector<Rat> pt(n);
    for (auto& x : pt) {
      x = Rat(static_cast<long>(rng() % 2001) - 1000, static_cast<long>(rng() % 97) + 1);
      x.canonicalize();
    }
    auto r = numeric_rank(elems, vars, pt);
    if (!r) continue;
    ++good;
    best = std::max(best, *r);
    if (best == full) return best;
  }

  std::vector<std::vector<RatFun>> m;
  for (const auto& u : elems) {
    std::vector<RatFun> row;
    for (std::size_t v : vars) row.push_back(u.partial(v));
    m.push_back(std::move(row));
  }
  return symbolic_rank(std::move(m));
}

std::vector<FormalGenerator> derivative_closure(const SubfieldSpec& k, const Tower& tower,
                                                unsigned order) {
  std::vector<FormalGenerator> out;
  std::vector<bool> pure(tower.size(), false);
  for (const auto& g : k.generators) {
    const std::string base = tower.print(g);
    RatFun value = g;
    for (unsigned d = 0; d <= order; ++d) {
      if (d > 0) value = differentiate(value, tower);
      if (value.is_constant()) break;
      bool skip = only_involves(value, pure);
      for (const auto& o : out)
        if (o.value == value) skip = true;
      if (!skip) {
        out.push_back({value, derivative_meaning(base, d)});
        if (value.is_polynomial() && value.num().is_monomial() && value.num().total_degree() == 1 &&
            value.num().leading_coeff() == 1)
          pure[*value.main_variable()] = true;
      }
    }
  }
  return out;
}

unsigned saturation_order(const SubfieldSpec& k, const Tower& tower, unsigned cap) {
  auto values = [&](unsigned order) {
    std::vector<RatFun> v;
    for (const auto& g : derivative_closure(k, tower, order)) v.push_back(g.value);
    return v;
  };
  std::size_t prev = algebraic_rank(values(0));
  for (unsigned order = 1; order <= cap; ++order) {
    std::size_t r = algebraic_rank(values(order));
    if (r == prev) return order;
    prev = r;
  }
  return cap;
}

namespace {

// Index of the formal variable standing for tower variable v, when some
// generator is exactly that variable.
std::vector<std::optional<std::size_t>> pure_positions(const std::vector<FormalGenerator>& gens,
                                                       std::size_t nvars) {
  std::vector<std::optional<std::size_t>> pos(nvars);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const RatFun& g = gens[i].value;
    if (g.is_polynomial() && g.num().is_monomial() && g.num().total_degree() == 1 &&
        g.num().leading_coeff() == 1) {
      std::size_t v = *g.main_variable();
      if (!pos[v]) pos[v] = i;
    }
  }
  return pos;
}

std::optional<Witness> try_membership(const RatFun& u, const std::vector<FormalGenerator>& gens,
                                      const std::vector<std::string>& names, unsigned dn,
                                      unsigned dd, const Bounds& bounds) {
  const std::size_t m = gens.size();
  const unsigned d = std::max(dn, dd);
  auto qmonos = monomials_upto(m, dd);
  auto pmonos = monomials_upto(m, dn);
  // Highest monomials first: the first kernel vector is then the one that
  // vanishes on the lowest free monomials.
  std::reverse(qmonos.begin(), qmonos.end());
  std::reverse(pmonos.begin(), pmonos.end());

  std::vector<std::vector<MPoly>> num_pow(m), den_pow(m);
  for (std::size_t i = 0; i < m; ++i) {
    num_pow[i].push_back(MPoly::constant(u.nvars(), 1));
    den_pow[i].push_back(MPoly::constant(u.nvars(), 1));
    for (unsigned e = 1; e <= d; ++e) {
      num_pow[i].push_back(num_pow[i].back() * gens[i].value.num());
      den_pow[i].push_back(den_pow[i].back() * gens[i].value.den());
    }
  }
  auto base = [&](const Exponents& e) {
    MPoly b = MPoly::constant(u.nvars(), 1);
    for (std::size_t i = 0; i < m; ++i) {
      if (e[i] > 0) b *= num_pow[i][e[i]];
      if (d > e[i] && !den_pow[i][d - e[i]].is_constant()) b *= den_pow[i][d - e[i]];
    }
    return b;
  };

  // Unknowns: P coefficients, then Q coefficients.
  std::vector<MPoly> qbase, cols;
  for (const auto& e : qmonos) qbase.push_back(base(e));
  for (const auto& e : pmonos) cols.push_back(-(u.den() * base(e)));
  for (const auto& b : qbase) cols.push_back(u.num() * b);

  std::vector<SparseVec> rows;
  append_rows(cols, MPoly(u.nvars()), cols.size(), rows);
  check_cells(rows.size(), cols.size(), bounds);
  LinearSolution sol = solve_sparse(cols.size(), std::move(rows), false);

  for (const auto& vec : sol.kernel) {
    MPoly qval(u.nvars());
    for (const auto& [idx, val] : vec)
      if (idx >= pmonos.size()) qval += qbase[idx - pmonos.size()].scaled(val);
    if (qval.is_zero()) continue;
    MPoly p = formal_poly(m, pmonos, vec, 0);
    MPoly q = formal_poly(m, qmonos, vec, pmonos.size());
    return Witness(names, gens, RatFun::normalize(std::move(p), std::move(q)), u);
  }
  return std::nullopt;
}

}  // namespace

namespace {

struct Candidate {
  std::vector<FormalGenerator> gens;
  std::vector<std::string> names;
  unsigned order = 0;
  bool certified_absent = false;
};

// Constant and pure-variable cases need no linear algebra.
std::optional<Witness> trivial_witness(const RatFun& u, const Candidate& c) {
  const std::size_t m = c.gens.size();
  if (u.is_constant()) return Witness(c.names, c.gens, RatFun::constant(m, u.constant_value()), u);
  auto pos = pure_positions(c.gens, u.nvars());
  std::vector<std::size_t> target(u.nvars(), 0);
  for (std::size_t v = 0; v < u.nvars(); ++v) {
    if (!u.uses(v)) continue;
    if (!pos[v]) return std::nullopt;
    target[v] = *pos[v];
  }
  return Witness(c.names, c.gens, u.remap(m, target), u);
}

bool rank_excludes(const RatFun& u, const Candidate& c) {
  std::vector<RatFun> values;
  for (const auto& g : c.gens) values.push_back(g.value);
  const std::size_t r = algebraic_rank(values);
  values.push_back(u);
  return algebraic_rank(values) > r;
}

// Degree outer, then denominator degree, then derivative order, over each
// rung of the ladder.
MembershipOutcome search(const RatFun& u, std::vector<Candidate> cands, const Bounds& bounds,
                         bool last_is_whole) {
  MembershipOutcome out;
  out.bounds = bounds;
  for (const auto& c : cands)
    if (auto w = trivial_witness(u, c)) {
      out.value = std::move(w);
      return out;
    }
  for (auto& c : cands) c.certified_absent = rank_excludes(u, c);
  // The last candidate generates the whole differential field.
  if (last_is_whole && !cands.empty() && cands.back().certified_absent) {
    out.certified_absent = true;
    out.note = "transcendental over the generated field (Jacobian rank)";
    return out;
  }
  std::set<std::tuple<unsigned, unsigned, std::size_t>> tried;
  for (const auto& b : bounds.ladder()) {
    out.bounds = b;
    const unsigned top = std::max(b.max_num_degree, b.max_den_degree);
    for (unsigned d = 1; d <= top; ++d) {
      const unsigned dn = std::min(d, b.max_num_degree);
      // Smaller denominators first at each degree.
      for (unsigned dd = 0; dd <= std::min(d, b.max_den_degree); ++dd) {
        for (std::size_t i = 0; i < cands.size(); ++i) {
          const auto& c = cands[i];
          if (c.certified_absent || c.order > b.max_derivative_order) continue;
          if (!tried.insert({dn, dd, i}).second) continue;
          if (auto w = try_membership(u, c.gens, c.names, dn, dd, b)) {
            out.value = std::move(w);
            return out;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

MembershipOutcome field_membership(const RatFun& u, const std::vector<FormalGenerator>& gens,
                                   const std::vector<std::string>& names, const Bounds& bounds) {
  Candidate c{gens, names, 0, false};
  return search(u, {c}, bounds, true);
}

MembershipOutcome subfield_membership(const RatFun& u, const SubfieldSpec& k, const Tower& tower,
                                      const Bounds& bounds,
                                      const std::vector<FormalGenerator>& extra,
                                      const std::vector<std::string>& extra_names) {
  const unsigned limit = bounds.ladder().back().max_derivative_order;
  const unsigned sat = saturation_order(k, tower, limit + 1);
  const unsigned cap = std::min(sat, limit);
  std::vector<Candidate> cands;
  std::size_t previous = static_cast<std::size_t>(-1);
  for (unsigned order = 0; order <= cap; ++order) {
    Candidate c;
    c.order = order;
    c.gens = derivative_closure(k, tower, order);
    if (c.gens.size() == previous) continue;
    previous = c.gens.size();
    c.names = formal_names(c.gens.size());
    for (std::size_t i = 0; i < extra.size(); ++i) {
      c.gens.push_back(extra[i]);
      c.names.push_back(i < extra_names.size() ? extra_names[i] : "e" + std::to_string(i));
    }
    cands.push_back(std::move(c));
  }
  return search(u, std::move(cands), bounds, sat <= limit);
}

SearchOutcome<RatFun> solve_first_order(const RatFun& f, const RatFun& g, const Tower& tower,
                                        const Bounds& bounds) {
  SearchOutcome<RatFun> out;
  out.bounds = bounds;
  const std::size_t nv = tower.size();
  std::vector<MPoly> denoms;
  auto add = [&](const MPoly& d) {
    for (const auto& x : denoms)
      if (x == d) return;
    denoms.push_back(d);
  };
  add(MPoly::constant(nv, 1));
  add(f.den());
  add(g.den());
  add(lcm(f.den(), g.den()));

  std::set<std::pair<unsigned, std::size_t>> tried;
  for (const auto& b : bounds.ladder()) {
    out.bounds = b;
    for (unsigned d = 1; d <= b.max_num_degree; ++d) {
      for (std::size_t qi = 0; qi < denoms.size(); ++qi) {
        if (!tried.insert({d, qi}).second) continue;
        const MPoly& q0 = denoms[qi];
        RatFun inv_q0 = RatFun::normalize(MPoly::constant(nv, 1), q0);
        auto monos = monomials_upto(nv, d + q0.total_degree());
        LinearEquation eq;
        eq.rhs = f;
        std::vector<RatFun> basis;
        for (const auto& e : monos) {
          RatFun w = RatFun(MPoly::monomial(e, 1)) * inv_q0;
          eq.coefficients.push_back(differentiate(w, tower) - g * w);
          basis.push_back(std::move(w));
        }
        LinearAnsatz ansatz{monos.size(), {std::move(eq)}};
        LinearSolution sol = solve_linear_ansatz(ansatz, b);
        if (!sol.consistent) continue;
        const SparseVec* coeffs = &sol.particular;
        if (f.is_zero()) {
          if (sol.kernel.empty()) continue;
          coeffs = &sol.kernel.front();
        }
        std::vector<Term> terms;
        for (const auto& [idx, val] : *coeffs) terms.push_back(Term{monos[idx], val});
        RatFun w = RatFun::normalize(MPoly::from_terms(nv, std::move(terms)), q0);
        if (!(differentiate(w, tower) == f + g * w))
          throw std::logic_error("first-order solution failed verification");
        out.value = std::move(w);
        return out;
      }
    }
  }
  return out;
}

}  // namespace diffield
