#include "diffield/structure.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "diffield/error.hpp"
#include "diffield/rational_integration.hpp"

namespace diffield {

namespace {

bool is_pure_variable(const RatFun& g) {
  return g.is_polynomial() && g.num().is_monomial() && g.num().total_degree() == 1 &&
         g.num().leading_coeff() == 1;
}

struct LinearSplit {
  std::vector<Rat> coeffs;  // one per outside variable
  RatFun rest;
};

// u = sum_v c_v * y_v + rest with rational c_v, v in `outside`, rest over the
// other variables.
std::optional<LinearSplit> split_linear(const RatFun& u, const std::vector<bool>& inside,
                                        const std::vector<std::size_t>& outside) {
  if (!only_involves(RatFun(u.den()), inside)) return std::nullopt;
  const std::size_t n = u.nvars();
  std::vector<std::vector<Term>> lin(outside.size());
  std::vector<Term> rest;
  for (const auto& t : u.num().terms()) {
    std::optional<std::size_t> hit;
    bool bad = false;
    for (std::size_t i = 0; i < outside.size(); ++i) {
      auto e = t.exps[outside[i]];
      if (e == 0) continue;
      if (e > 1 || hit) bad = true;
      hit = i;
    }
    if (bad) return std::nullopt;
    if (!hit) {
      rest.push_back(t);
      continue;
    }
    Term r = t;
    r.exps[outside[*hit]] = 0;
    lin[*hit].push_back(std::move(r));
  }
  LinearSplit out;
  for (auto& terms : lin) {
    RatFun c = RatFun::normalize(MPoly::from_terms(n, std::move(terms)), u.den());
    if (!c.is_constant()) return std::nullopt;
    out.coeffs.push_back(c.constant_value());
  }
  out.rest = RatFun::normalize(MPoly::from_terms(n, std::move(rest)), u.den());
  return out;
}

// Reduced row echelon form of the rows; returns the last nonzero row scaled to
// a leading 1. Among normalized vectors of the span it is lexicographically
// least.
std::vector<Rat> lex_least(const std::vector<SparseVec>& basis, std::size_t n) {
  std::vector<std::vector<Rat>> m;
  for (const auto& v : basis) {
    std::vector<Rat> row(n, Rat(0));
    for (const auto& [i, x] : v) row[i] = x;
    m.push_back(std::move(row));
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rat inv = Rat(1) / m[r][c];
    for (auto& x : m[r]) x *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return m[r - 1];
}

std::vector<RatFun> values_of(const std::vector<FormalGenerator>& gens) {
  std::vector<RatFun> v;
  for (const auto& g : gens) v.push_back(g.value);
  return v;
}

// Closure of K at the largest usable order, and whether it generates all of K.
struct Closure {
  std::vector<FormalGenerator> gens;
  std::vector<std::string> names;
  bool saturated = false;
};

Closure closure_of(const SubfieldSpec& k, const Tower& tower, const Bounds& bounds) {
  const unsigned limit = bounds.ladder().back().max_derivative_order;
  const unsigned sat = saturation_order(k, tower, limit + 1);
  Closure c;
  c.gens = derivative_closure(k, tower, std::min(sat, limit));
  c.names = formal_names(c.gens.size());
  c.saturated = sat <= limit;
  return c;
}

}  // namespace

std::vector<std::string> eta_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("eta" + std::to_string(i + 1));
  return out;
}

std::vector<bool> subfield_symbols(const SubfieldSpec& k, const Tower& tower,
                                   const Bounds& bounds) {
  std::vector<bool> s(tower.size(), false);
  for (const auto& g : k.generators) {
    if (!is_pure_variable(g))
      throw Error(ErrorKind::Unsupported,
                  "subfield generators must be tower variables here, got " + tower.print(g));
    s[*g.main_variable()] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < tower.size(); ++v) {
      if (!s[v]) continue;
      auto need = tower.derivative_of(v).support();
      for (std::size_t w = 0; w < need.size(); ++w) {
        if (!need[w] || s[w]) continue;
        auto m = subfield_membership(tower.var(w), k, tower, bounds);
        if (!m.found())
          throw Error(ErrorKind::Unsupported, "cannot show " + tower.names()[w] + " lies in " +
                                                  (k.name.empty() ? "K" : k.name));
        s[w] = true;
        changed = true;
      }
    }
  }
  return s;
}

std::optional<Relation> ostrowski_relation(const std::vector<RatFun>& ws, const SubfieldSpec& k,
                                           const Tower& tower, const Bounds& bounds) {
  const auto inside = subfield_symbols(k, tower, bounds);
  std::vector<std::size_t> outside;
  for (std::size_t v = 0; v < tower.size(); ++v)
    if (!inside[v]) outside.push_back(v);

  std::vector<LinearSplit> splits;
  for (const auto& w : ws) {
    if (!only_involves(differentiate(w, tower), inside))
      throw Error(ErrorKind::NotAntiderivative,
                  "D(" + tower.print(w) + ") = " + tower.print(differentiate(w, tower)) +
                      " is not in the subfield");
    auto s = split_linear(w, inside, outside);
    if (!s)
      throw Error(ErrorKind::Unsupported,
                  tower.print(w) + " is not linear in the generators outside the subfield");
    splits.push_back(std::move(*s));
  }

  std::vector<SparseVec> rows;
  for (std::size_t i = 0; i < outside.size(); ++i) {
    SparseVec row;
    for (std::size_t j = 0; j < ws.size(); ++j)
      if (splits[j].coeffs[i] != 0) row.emplace_back(j, splits[j].coeffs[i]);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  auto sol = solve_sparse(ws.size(), std::move(rows), false);
  if (sol.kernel.empty()) return std::nullopt;

  Relation rel;
  rel.alpha = lex_least(sol.kernel, ws.size());
  rel.remainder = tower.constant(0);
  for (std::size_t j = 0; j < ws.size(); ++j)
    if (rel.alpha[j] != 0) rel.remainder += ws[j].scaled(rel.alpha[j]);
  if (!only_involves(rel.remainder, inside))
    throw std::logic_error("relation remainder leaves the subfield");
  return rel;
}

Relation antiderivative_decompose(const RatFun& g, const Tower& tower) {
  if (!tower.is_flat()) throw Error(ErrorKind::NotFlat, "the tower is not flat");
  std::vector<bool> base(tower.size(), false);
  base[0] = true;
  RatFun dg = differentiate(g, tower);
  if (!only_involves(dg, base))
    throw Error(ErrorKind::NotAntiderivative,
                "D(" + tower.print(g) + ") = " + tower.print(dg) + " is not in Q(z)");
  std::vector<std::size_t> outside;
  for (std::size_t v = 1; v < tower.size(); ++v) outside.push_back(v);
  auto s = split_linear(g, base, outside);
  if (!s)
    throw Error(ErrorKind::MalformedAntiderivative,
                tower.print(g) + " has derivative in Q(z) but is not linear in the generators");
  return Relation{std::move(s->coeffs), std::move(s->rest)};
}

namespace {

// alpha over `unplaced` and a correction a over monomials in `placed` with
// D(sum alpha_i y_i + a) in Q(prev). Coordinates and derivation are current.
std::optional<std::pair<std::vector<Rat>, RatFun>> find_combination(
    std::span<const RatFun> deriv, const std::vector<std::size_t>& unplaced,
    const std::vector<bool>& prev, const std::vector<bool>& placed, const Bounds& bounds) {
  const std::size_t n = deriv.size();
  std::vector<std::size_t> wvars, others;
  for (std::size_t v = 0; v < n; ++v) {
    if (placed[v]) wvars.push_back(v);
    if (!prev[v]) others.push_back(v);
  }
  std::set<unsigned> tried;
  for (const auto& b : bounds.ladder()) {
    for (unsigned d = 0; d <= b.max_num_degree; ++d) {
      if (!tried.insert(d).second) continue;
      // Monomials in the placed variables of degree 1..d that involve a
      // variable outside prev.
      std::vector<RatFun> monos;
      Exponents e(n, 0);
      auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == wvars.size()) {
          bool useful = false;
          for (std::size_t v = 0; v < n; ++v)
            if (e[v] && !prev[v]) useful = true;
          if (useful) monos.push_back(RatFun(MPoly::monomial(e, 1)));
          return;
        }
        for (unsigned k = 0; k <= left; ++k) {
          e[wvars[i]] = k;
          self(self, i + 1, left - k);
        }
        e[wvars[i]] = 0;
      };
      rec(rec, 0, d);

      std::vector<RatFun> images;
      for (std::size_t u : unplaced) images.push_back(deriv[u]);
      for (const auto& m : monos) images.push_back(differentiate(m, deriv));
      LinearAnsatz ansatz;
      ansatz.unknowns = images.size();
      for (std::size_t v : others) {
        LinearEquation eq;
        for (const auto& im : images) eq.coefficients.push_back(im.partial(v));
        eq.rhs = RatFun::constant(n, 0);
        ansatz.equations.push_back(std::move(eq));
      }
      auto sol = solve_linear_ansatz(ansatz, b);
      for (const auto& vec : sol.kernel) {
        std::vector<Rat> alpha(unplaced.size(), Rat(0));
        bool any = false;
        for (const auto& [i, x] : vec)
          if (i < unplaced.size()) {
            alpha[i] = x;
            any = true;
          }
        if (!any) continue;
        Rat lead = 0;
        for (const auto& x : alpha)
          if (x != 0) {
            lead = x;
            break;
          }
        RatFun a = RatFun::constant(n, 0);
        for (const auto& [i, x] : vec)
          if (i >= unplaced.size()) a += monos[i - unplaced.size()].scaled(x / lead);
        for (auto& x : alpha) x /= lead;
        return std::make_pair(std::move(alpha), std::move(a));
      }
    }
  }
  return std::nullopt;
}

}  // namespace

NormalTower normal_tower(const Tower& tower, const Bounds& bounds) {
  const std::size_t n = tower.size();
  std::vector<RatFun> deriv(tower.derivation().begin(), tower.derivation().end());
  std::vector<RatFun> expr;
  for (std::size_t v = 0; v < n; ++v) expr.push_back(tower.var(v));
  std::vector<bool> placed_before(n, false);
  std::vector<bool> done(n, false);

  NormalTower out;
  out.levels.push_back({});
  out.derivatives.push_back({});
  std::size_t remaining = n;
  while (remaining > 0) {
    std::vector<bool> placed = placed_before;
    std::vector<std::size_t> fresh;
    bool progress = true;
    while (progress && remaining > 0) {
      progress = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v] || !only_involves(deriv[v], placed_before)) continue;
        done[v] = placed[v] = true;
        fresh.push_back(v);
        --remaining;
        progress = true;
      }
      if (progress || remaining == 0) continue;
      std::vector<std::size_t> unplaced;
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v]) unplaced.push_back(v);
      auto combo = find_combination(deriv, unplaced, placed_before, placed, bounds);
      if (!combo) break;
      const auto& [alpha, a] = *combo;
      std::size_t e = n;
      for (std::size_t i = 0; i < unplaced.size(); ++i)
        if (alpha[i] != 0) {
          e = unplaced[i];
          break;
        }
      // New coordinate eta = sum alpha_i y_i + a replaces y_e.
      RatFun deta = differentiate(a, deriv);
      RatFun eta_expr = substitute(a, expr, n);
      RatFun old_e = tower.var(e) - a;
      for (std::size_t i = 0; i < unplaced.size(); ++i) {
        if (alpha[i] == 0) continue;
        deta += deriv[unplaced[i]].scaled(alpha[i]);
        eta_expr += expr[unplaced[i]].scaled(alpha[i]);
        if (unplaced[i] != e) old_e -= tower.var(unplaced[i]).scaled(alpha[i]);
      }
      std::vector<RatFun> images;
      for (std::size_t v = 0; v < n; ++v) images.push_back(tower.var(v));
      images[e] = old_e;  // alpha_e = 1 after normalization
      for (std::size_t v = 0; v < n; ++v) deriv[v] = substitute(deriv[v], images, n);
      deriv[e] = substitute(deta, images, n);
      expr[e] = eta_expr;
      progress = true;
    }
    if (fresh.empty()) {
      out.complete = false;
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v]) out.unplaced.push_back(expr[v]);
      break;
    }
    std::vector<RatFun> level, dlevel;
    for (std::size_t v : fresh) {
      level.push_back(expr[v]);
      dlevel.push_back(differentiate(expr[v], tower));
    }
    out.levels.push_back(std::move(level));
    out.derivatives.push_back(std::move(dlevel));
    placed_before = placed;
  }
  return out;
}

CompositumBasis compositum_basis(const SubfieldSpec& k, const Tower& tower, const Bounds& bounds) {
  Closure cl = closure_of(k, tower, bounds);
  CompositumBasis out;
  std::vector<FormalGenerator> gens = cl.gens;
  std::vector<std::string> names = cl.names;
  for (std::size_t v = 0; v < tower.size(); ++v) {
    auto vals = values_of(gens);
    const std::size_t r = algebraic_rank(vals);
    vals.push_back(tower.var(v));
    if (algebraic_rank(vals) > r) {
      if (!cl.saturated) {
        out.complete = false;
        out.note = "closure of the subfield not saturated within bounds";
      }
      out.chosen.push_back(v);
      gens.push_back({tower.var(v), tower.names()[v]});
      names.push_back(tower.names()[v]);
      continue;
    }
    auto w = field_membership(tower.var(v), gens, names, bounds);
    if (!w.found()) {
      out.complete = false;
      out.note = "no witness within bounds for " + tower.names()[v];
    }
    out.witnesses.emplace_back(v, std::move(w.value));
  }
  return out;
}

RatFun minimal_shift(const RatFun& u, const Tower& tower, std::size_t top) {
  if (!u.uses(top))
    throw Error(ErrorKind::AlreadyInBase,
                tower.print(u) + " does not involve " + tower.names()[top]);
  const MPoly& part = u.num().uses(top) ? u.num() : u.den();
  auto coeffs = part.coefficients_in(top);
  const std::size_t deg = coeffs.size() - 1;
  RatFun an(coeffs[deg]);
  RatFun an1(coeffs[deg - 1]);
  return tower.var(top) + an1 / an.scaled(Rat(static_cast<long>(deg)));
}

StructureReport subfield_structure(const SubfieldSpec& k, const Tower& tower,
                                   const Bounds& bounds) {
  Closure cl = closure_of(k, tower, bounds);
  const auto kvals = values_of(cl.gens);
  const std::size_t rank_k = algebraic_rank(kvals);

  StructureReport out;
  std::vector<FormalGenerator> etas;
  std::vector<RatFun> eta_vals;

  std::vector<RatFun> candidates;
  auto add = [&](const RatFun& c) {
    if (c.is_constant()) return;
    for (const auto& x : candidates)
      if (x == c) return;
    candidates.push_back(c);
  };
  for (std::size_t v = 0; v < tower.size(); ++v) add(tower.var(v));
  for (const auto& c : kvals) add(c);
  for (const auto& c : kvals) add(minimal_shift(c, tower, *c.main_variable()));

  while (algebraic_rank(eta_vals) < rank_k) {
    const auto names = eta_names(etas.size());
    bool adjoined = false;
    for (const auto& c : candidates) {
      auto with_c = eta_vals;
      with_c.push_back(c);
      if (algebraic_rank(with_c) <= algebraic_rank(eta_vals)) continue;
      auto in_k = kvals;
      in_k.push_back(c);
      if (algebraic_rank(in_k) > rank_k) continue;
      auto dw = field_membership(differentiate(c, tower), etas, names, bounds);
      if (!dw.found()) continue;
      auto mw = subfield_membership(c, k, tower, bounds, etas, names);
      out.generators.push_back({c, std::move(dw.value), std::move(mw.value)});
      etas.push_back({c, tower.print(c)});
      eta_vals.push_back(c);
      adjoined = true;
      break;
    }
    if (!adjoined) break;
  }

  const auto names = eta_names(etas.size());
  bool all = true;
  for (const auto& g : k.generators) {
    auto w = field_membership(g, etas, names, bounds);
    if (!w.found()) all = false;
    out.inputs.push_back(std::move(w.value));
  }
  out.resolved = cl.saturated && all && algebraic_rank(eta_vals) == rank_k;
  if (!cl.saturated) out.note = "closure of the subfield not saturated within bounds";
  else if (!out.resolved) out.note = "no further antiderivative found within bounds";
  return out;
}

}  // namespace diffield

namespace diffield {

ConstantCheck check_no_new_constants(const Tower& tower, const Bounds& bounds) {
  ConstantCheck out;
  const std::size_t n = tower.size();
  std::vector<std::size_t> flat;
  std::vector<bool> base(n, false);
  base[0] = true;
  for (std::size_t v = 1; v < n; ++v)
    if (only_involves(tower.derivative_of(v), base)) flat.push_back(v);

  // Residues: sum a_i D(y_i) has a rational antiderivative iff the log parts
  // cancel, and then sum a_i y_i minus that antiderivative is constant.
  if (!flat.empty()) {
    std::vector<HermiteDecomposition> parts;
    LinearAnsatz ans;
    ans.unknowns = flat.size();
    LinearEquation eq;
    for (auto v : flat) {
      parts.push_back(hermite_reduce(tower.derivative_of(v)));
      eq.coefficients.push_back(parts.back().log_part);
    }
    eq.rhs = tower.constant(0);
    ans.equations.push_back(std::move(eq));
    auto sol = solve_linear_ansatz(ans, bounds);
    if (!sol.kernel.empty()) {
      auto alpha = lex_least(sol.kernel, flat.size());
      RatFun c = tower.constant(0);
      for (std::size_t j = 0; j < flat.size(); ++j)
        if (alpha[j] != 0) c += (tower.var(flat[j]) - parts[j].rational_part).scaled(alpha[j]);
      throw Error(ErrorKind::InvalidTowerConstant,
                  "D(" + tower.print(c) + ") = 0 but it is not a rational number");
    }
    out.exact = flat.size();
  }

  for (std::size_t v = 1; v < n; ++v) {
    if (std::find(flat.begin(), flat.end(), v) != flat.end()) continue;
    Tower below = tower.prefix(v);
    std::vector<std::size_t> target(n, 0);
    for (std::size_t i = 0; i < v; ++i) target[i] = i;
    RatFun f = tower.derivative_of(v).remap(v, target);
    auto w = solve_first_order(f, below.constant(0), below, bounds);
    if (w.found()) {
      std::vector<std::size_t> up(v);
      for (std::size_t i = 0; i < v; ++i) up[i] = i;
      RatFun c = tower.var(v) - w.value->remap(n, up);
      throw Error(ErrorKind::InvalidTowerConstant,
                  "D(" + tower.print(c) + ") = 0 but it is not a rational number");
    }
    ++out.bounded;
  }
  return out;
}

}  // namespace diffield
