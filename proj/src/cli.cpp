#include "diffield/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "diffield/autgroup.hpp"
#include "diffield/error.hpp"
#include "diffield/expr.hpp"
#include "diffield/structure.hpp"

namespace diffield {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

[[noreturn]] void line_error(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::vector<std::string> split_list(std::string_view text) {
  std::string s = trim(text);
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw Error(ErrorKind::SyntaxError, "list is missing its closing ']'");
    s = s.substr(1, s.size() - 2);
  }
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  for (const auto& x : out)
    if (x.empty()) throw Error(ErrorKind::SyntaxError, "empty entry in list");
  return out;
}

TowerFile parse_tower_file(std::string_view text) {
  TowerFile tf;
  bool have_base = false;
  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto sp = line.find_first_of(" \t");
    std::string kw = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
    if (kw == "base") {
      if (have_base) line_error(lineno, "second 'base' line");
      if (rest != "z") line_error(lineno, "the base variable must be z");
      have_base = true;
    } else if (kw == "gen") {
      if (!have_base) line_error(lineno, "'base z' must come first");
      auto semi = rest.find(';');
      if (semi == std::string::npos) line_error(lineno, "expected 'gen <name> ; D(<name>) = <expr>'");
      std::string name = trim(rest.substr(0, semi));
      std::string decl = trim(rest.substr(semi + 1));
      if (!is_identifier(name)) line_error(lineno, "bad generator name '" + name + "'");
      auto eq = decl.find('=');
      if (eq == std::string::npos) line_error(lineno, "expected '=' after D(" + name + ")");
      std::string lhs = trim(decl.substr(0, eq));
      std::string compact;
      for (char c : lhs)
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
      if (compact != "D(" + name + ")") line_error(lineno, "expected D(" + name + ") before '='");
      std::string rhs = trim(decl.substr(eq + 1));
      if (rhs.empty()) line_error(lineno, "missing derivative expression");
      tf.spec.generators.push_back({name, rhs});
    } else if (kw == "subfield") {
      if (!have_base) line_error(lineno, "'base z' must come first");
      auto eq = rest.find('=');
      if (eq == std::string::npos) line_error(lineno, "expected 'subfield <name> = [...]'");
      std::string name = trim(rest.substr(0, eq));
      if (!is_identifier(name)) line_error(lineno, "bad subfield name '" + name + "'");
      std::string list = trim(rest.substr(eq + 1));
      if (list.empty() || list.front() != '[') line_error(lineno, "expected '[' after '='");
      try {
        tf.subfields.emplace_back(name, split_list(list));
      } catch (const Error& e) {
        line_error(lineno, e.what());
      }
    } else {
      line_error(lineno, "unknown keyword '" + kw + "'");
    }
  }
  if (!have_base) throw Error(ErrorKind::SyntaxError, "missing 'base z' line");
  return tf;
}

namespace {

struct Context {
  Context(std::ostream& o, std::ostream& e) : out(o), err(e) {}

  std::ostream& out;
  std::ostream& err;
  std::string tower_path;
  unsigned deg = 0;
  unsigned order = 0;
  std::size_t max_cells = 0;
  bool no_escalate = false;

  TowerFile file;
  std::optional<Tower> tower;

  void load() {
    std::ifstream in(tower_path);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read tower file '" + tower_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    file = parse_tower_file(ss.str());
    tower = Tower::validate(file.spec);
  }

  Bounds bounds() const {
    Bounds b;
    if (deg) b.max_num_degree = b.max_den_degree = deg;
    if (order) b.max_derivative_order = order;
    if (max_cells) b.max_cells = max_cells;
    if (no_escalate) b.escalation.clear();
    return b;
  }

  RatFun expr(const std::string& s) const { return tower->parse(s); }
  std::string str(const RatFun& u) const { return tower->print(u); }

  SubfieldSpec subfield(const std::string& arg) const {
    SubfieldSpec k;
    std::vector<std::string> items;
    if (!arg.empty() && arg.front() == '[') {
      k.name = "K";
      items = split_list(arg);
    } else {
      auto it = std::find_if(file.subfields.begin(), file.subfields.end(),
                             [&](const auto& s) { return s.first == arg; });
      if (it == file.subfields.end())
        throw Error(ErrorKind::InvalidArgument, "no subfield named '" + arg + "' in the tower file");
      k.name = it->first;
      items = it->second;
    }
    for (const auto& s : items) k.generators.push_back(expr(s));
    return k;
  }

  void separator() const { out << "---\n"; }
  void kv(const std::string& k, const std::string& v) const { out << k << '=' << v << '\n'; }

  std::string bounds_text(const Bounds& b) const {
    return "deg:" + std::to_string(b.max_num_degree) + "/" + std::to_string(b.max_den_degree) +
           ",order:" + std::to_string(b.max_derivative_order);
  }

  void legend(const Witness& w) const {
    for (std::size_t i = 0; i < w.names().size(); ++i) {
      const auto& a = w.arguments()[i];
      std::string value = str(a.value);
      if (a.meaning == w.names()[i]) continue;
      out << "  " << w.names()[i] << " = " << a.meaning;
      if (a.meaning != value) out << " = " << value;
      out << '\n';
    }
  }
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::string rat_list(const std::vector<Rat>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(x.get_str());
  return join(s, ",");
}

int cmd_validate(Context& c) {
  auto report = check_no_new_constants(*c.tower, c.bounds());
  const Tower& t = *c.tower;
  c.out << "valid tower with " << t.generator_count() << " generator"
        << (t.generator_count() == 1 ? "" : "s") << " over Q(z)\n";
  for (std::size_t v = 0; v < t.size(); ++v)
    c.out << "  D(" << t.names()[v] << ") = " << c.str(t.derivative_of(v)) << '\n';
  c.separator();
  c.kv("status", "valid");
  c.kv("generators", std::to_string(t.generator_count()));
  c.kv("flat", t.is_flat() ? "true" : "false");
  c.kv("exact_checks", std::to_string(report.exact));
  c.kv("bounded_checks", std::to_string(report.bounded));
  return kSuccess;
}

int cmd_derive(Context& c, const std::string& e, unsigned n) {
  RatFun d = nth_derivative(c.expr(e), *c.tower, n);
  c.out << c.str(d) << '\n';
  c.separator();
  c.kv("order", std::to_string(n));
  c.kv("result", c.str(d));
  return kSuccess;
}

int cmd_const(Context& c, const std::string& e) {
  bool k = is_constant(c.expr(e), *c.tower);
  c.out << (k ? "true" : "false") << '\n';
  c.separator();
  c.kv("constant", k ? "true" : "false");
  return k ? kSuccess : kNegative;
}

int cmd_decompose(Context& c, const std::string& e) {
  Relation r = antiderivative_decompose(c.expr(e), *c.tower);
  std::string lin;
  for (std::size_t i = 0; i < r.alpha.size(); ++i) {
    if (r.alpha[i] == 0) continue;
    RatFun term = c.tower->var(i + 1).scaled(r.alpha[i]);
    lin += lin.empty() ? c.str(term) : (r.alpha[i] < 0 ? " - " + c.str(-term) : " + " + c.str(term));
  }
  if (lin.empty()) lin = "0";
  c.out << c.str(c.expr(e)) << " = " << lin << " + (" << c.str(r.remainder) << ")\n";
  c.separator();
  c.kv("alpha", rat_list(r.alpha));
  c.kv("remainder", c.str(r.remainder));
  return kSuccess;
}

int cmd_ostrowski(Context& c, const std::vector<std::string>& ws, const std::string& over) {
  SubfieldSpec k = over.empty() ? SubfieldSpec{"F", {c.tower->var(0)}} : c.subfield(over);
  std::vector<RatFun> vals;
  for (const auto& w : ws) vals.push_back(c.expr(w));
  auto rel = ostrowski_relation(vals, k, *c.tower, c.bounds());
  if (!rel) {
    c.out << "independent\n";
    c.separator();
    c.kv("result", "independent");
    return kNegative;
  }
  std::string lhs;
  for (std::size_t j = 0; j < vals.size(); ++j) {
    const Rat& a = rel->alpha[j];
    if (a == 0) continue;
    std::string coef = abs(a) == 1 ? "" : Rat(abs(a)).get_str() + "*";
    std::string body = c.str(vals[j]);
    std::string term = coef + (body.find(' ') == std::string::npos ? body : "(" + body + ")");
    if (lhs.empty())
      lhs = (a < 0 ? "-" : "") + term;
    else
      lhs += (a < 0 ? " - " : " + ") + term;
  }
  c.out << "relation: " << lhs << " = " << c.str(rel->remainder) << '\n';
  c.separator();
  c.kv("result", "relation");
  c.kv("alpha", rat_list(rel->alpha));
  c.kv("remainder", c.str(rel->remainder));
  return kSuccess;
}

int cmd_normal_tower(Context& c) {
  NormalTower nt = normal_tower(*c.tower, c.bounds());
  std::vector<std::string> acc, trdeg;
  for (std::size_t j = 0; j < nt.levels.size(); ++j) {
    for (const auto& g : nt.levels[j]) acc.push_back(c.str(g));
    c.out << "E" << j << " = " << (acc.empty() ? "Q" : "Q(" + join(acc, ", ") + ")") << '\n';
    for (std::size_t i = 0; i < nt.levels[j].size(); ++i)
      c.out << "  D(" << c.str(nt.levels[j][i]) << ") = " << c.str(nt.derivatives[j][i]) << '\n';
    trdeg.push_back(std::to_string(acc.size()));
  }
  std::vector<std::string> left;
  for (const auto& u : nt.unplaced) left.push_back(c.str(u));
  if (!nt.complete) c.out << "unplaced within bounds: " << join(left, ", ") << '\n';
  c.separator();
  c.kv("status", nt.complete ? "complete" : "partial");
  c.kv("levels", std::to_string(nt.levels.size()));
  c.kv("trdeg", join(trdeg, ","));
  if (!nt.complete) c.kv("unplaced", join(left, ","));
  return nt.complete ? kSuccess : kUnknown;
}

int cmd_basis(Context& c, const std::string& sub) {
  SubfieldSpec k = c.subfield(sub);
  CompositumBasis b = compositum_basis(k, *c.tower, c.bounds());
  std::vector<std::string> chosen;
  for (auto v : b.chosen) chosen.push_back(c.tower->names()[v]);
  c.out << "basis: " << (chosen.empty() ? "(none)" : join(chosen, ", ")) << '\n';
  for (const auto& [v, w] : b.witnesses) {
    c.out << c.tower->names()[v] << " = " << (w ? w->to_string() : "?") << '\n';
    if (w) c.legend(*w);
  }
  if (!b.note.empty()) c.out << "note: " << b.note << '\n';
  c.separator();
  c.kv("status", b.complete ? "complete" : "partial");
  c.kv("basis", join(chosen, ","));
  return b.complete ? kSuccess : kUnknown;
}

int report_membership(Context& c, const MembershipOutcome& m) {
  if (m.found()) {
    c.out << m.value->to_string() << '\n';
    c.legend(*m.value);
    c.separator();
    c.kv("result", "found");
    c.kv("witness", m.value->to_string());
    c.kv("bounds", c.bounds_text(m.bounds));
    return kSuccess;
  }
  c.out << "no solution within bounds\n";
  if (!m.note.empty()) c.out << "note: " << m.note << '\n';
  c.separator();
  c.kv("result", "none");
  c.kv("certified", m.certified_absent ? "true" : "false");
  c.kv("bounds", c.bounds_text(m.bounds));
  return kNegative;
}

int cmd_member(Context& c, const std::string& sub, const std::string& e) {
  return report_membership(c, subfield_membership(c.expr(e), c.subfield(sub), *c.tower, c.bounds()));
}

int cmd_recover(Context& c, const std::vector<std::string>& from, const std::string& target) {
  SubfieldSpec k{"K", {}};
  for (const auto& f : from) k.generators.push_back(c.expr(f));
  return report_membership(c, subfield_membership(c.expr(target), k, *c.tower, c.bounds()));
}

int cmd_solve_ode(Context& c, const std::string& f, const std::string& g) {
  auto w = solve_first_order(c.expr(f), c.expr(g), *c.tower, c.bounds());
  if (w.found()) {
    c.out << "w = " << c.str(*w.value) << '\n';
    c.separator();
    c.kv("result", "found");
    c.kv("w", c.str(*w.value));
    c.kv("bounds", c.bounds_text(w.bounds));
    return kSuccess;
  }
  c.out << "no solution within bounds\n";
  c.separator();
  c.kv("result", "none");
  c.kv("bounds", c.bounds_text(w.bounds));
  return kNegative;
}

int cmd_aut(Context& c, const std::string& alpha, const std::vector<std::string>& maps,
            const std::vector<std::string>& applies, const std::vector<std::string>& probes,
            bool triangular) {
  const Tower& t = *c.tower;
  std::optional<AutMap> sigma;
  if (!alpha.empty()) {
    if (!maps.empty()) throw Error(ErrorKind::InvalidArgument, "give either --alpha or --map");
    std::vector<Rat> a;
    for (const auto& s : split_list(alpha)) {
      RatFun v = t.parse(s);
      if (!v.is_constant()) throw Error(ErrorKind::InvalidArgument, "shift '" + s + "' is not a number");
      a.push_back(v.constant_value());
    }
    sigma = make_translation_aut(t, a);
  } else {
    std::vector<RatFun> images;
    for (std::size_t v = 0; v < t.size(); ++v) images.push_back(t.var(v));
    for (const auto& m : maps) {
      auto arrow = m.find("->");
      if (arrow == std::string::npos) throw Error(ErrorKind::SyntaxError, "expected NAME->EXPR in '" + m + "'");
      std::string name = trim(m.substr(0, arrow));
      auto idx = t.index_of(name);
      if (!idx) throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + name + "'");
      images[*idx] = t.parse(m.substr(arrow + 2));
    }
    sigma = verify_differential(images, t);
  }
  for (std::size_t v = 0; v < t.size(); ++v)
    c.out << "sigma(" << t.names()[v] << ") = " << c.str(sigma->images()[v]) << '\n';
  std::optional<TriangularData> tri;
  if (triangular) {
    tri = verify_triangular(*sigma, t);
    for (std::size_t v = 0; v < t.size(); ++v)
      c.out << "  delta(" << t.names()[v] << ") = " << tri->delta[v].get_str() << ", r = "
            << c.str(tri->shift[v]) << '\n';
  }
  std::vector<std::string> applied;
  for (const auto& a : applies) {
    RatFun r = apply(*sigma, t.parse(a));
    c.out << "sigma(" << c.str(t.parse(a)) << ") = " << c.str(r) << '\n';
    applied.push_back(c.str(r));
  }
  bool all_fixed = true;
  std::vector<std::string> probe_vals;
  for (const auto& p : probes) {
    bool fixed = fixed_field_probe({*sigma}, t.parse(p));
    all_fixed = all_fixed && fixed;
    c.out << "fixed(" << c.str(t.parse(p)) << ") = " << (fixed ? "true" : "false") << '\n';
    probe_vals.push_back(fixed ? "true" : "false");
  }
  c.separator();
  c.kv("verified", "true");
  std::vector<std::string> ims;
  for (const auto& im : sigma->images()) ims.push_back(c.str(im));
  c.kv("images", join(ims, ";"));
  if (tri) {
    std::vector<std::string> sh;
    for (const auto& s : tri->shift) sh.push_back(c.str(s));
    c.kv("delta", rat_list(tri->delta));
    c.kv("shift", join(sh, ";"));
  }
  if (!applied.empty()) c.kv("applied", join(applied, ";"));
  if (!probe_vals.empty()) c.kv("fixed", join(probe_vals, ","));
  return all_fixed ? kSuccess : kNegative;
}

int cmd_structure(Context& c, const std::string& sub) {
  SubfieldSpec k = c.subfield(sub);
  StructureReport r = subfield_structure(k, *c.tower, c.bounds());
  c.out << (r.resolved ? "resolved" : "partial") << '\n';
  auto names = eta_names(r.generators.size());
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < r.generators.size(); ++i) {
    const auto& g = r.generators[i];
    gens.push_back(c.str(g.value));
    c.out << names[i] << " = " << c.str(g.value) << '\n';
    if (g.derivative) c.out << "  D(" << names[i] << ") = " << g.derivative->to_string() << '\n';
    if (g.membership) {
      c.out << "  " << names[i] << " = " << g.membership->to_string() << '\n';
      for (std::size_t j = 0; j < g.membership->names().size(); ++j) {
        const auto& nm = g.membership->names()[j];
        if (nm.rfind("eta", 0) == 0) continue;
        const auto& a = g.membership->arguments()[j];
        std::string value = c.str(a.value);
        c.out << "    " << nm << " = " << a.meaning;
        if (a.meaning != value) c.out << " = " << value;
        c.out << '\n';
      }
    } else {
      c.out << "  in " << k.name << " by transcendence degree; no witness within bounds\n";
    }
  }
  for (std::size_t i = 0; i < k.generators.size(); ++i) {
    c.out << c.str(k.generators[i]) << " = "
          << (r.inputs[i] ? r.inputs[i]->to_string() : "?") << '\n';
  }
  if (!r.note.empty()) c.out << "note: " << r.note << '\n';
  c.separator();
  c.kv("status", r.resolved ? "resolved" : "partial");
  c.kv("generators", join(gens, ","));
  return r.resolved ? kSuccess : kUnknown;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Differential fields built from iterated antiderivatives over Q(z)", "diffield"};
  app.require_subcommand(1);
  Context c(out, err);

  auto common = [&](CLI::App* s) {
    s->add_option("--tower", c.tower_path, "tower file")->required();
    s->add_option("--deg", c.deg, "numerator and denominator degree bound");
    s->add_option("--order", c.order, "derivative order bound");
    s->add_option("--max-cells", c.max_cells, "cap on linear system size");
    s->add_flag("--no-escalate", c.no_escalate, "skip the degree escalation step");
  };

  std::string expr, sub, over, target, f, g = "0", alpha;
  std::vector<std::string> exprs, from, maps, applies, probes;
  unsigned n = 1;
  bool triangular = false;
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "validate a tower and look for new constants");
  common(validate);
  validate->callback([&] { action = [&] { return cmd_validate(c); }; });

  auto* derive = app.add_subcommand("derive", "differentiate an expression");
  common(derive);
  derive->add_option("expr", expr)->required();
  derive->add_option("-n", n, "number of derivatives");
  derive->callback([&] { action = [&] { return cmd_derive(c, expr, n); }; });

  auto* cnst = app.add_subcommand("const", "test whether an expression is constant");
  common(cnst);
  cnst->add_option("expr", expr)->required();
  cnst->callback([&] { action = [&] { return cmd_const(c, expr); }; });

  auto* dec = app.add_subcommand("decompose", "write an antiderivative of Q(z) as sum a_i zeta_i + f");
  common(dec);
  dec->add_option("expr", expr)->required();
  dec->callback([&] { action = [&] { return cmd_decompose(c, expr); }; });

  auto* ost = app.add_subcommand("ostrowski", "find a linear relation among antiderivatives");
  common(ost);
  ost->add_option("exprs", exprs)->required();
  ost->add_option("--over", over, "subfield name or [list]; default [z]");
  ost->callback([&] { action = [&] { return cmd_ostrowski(c, exprs, over); }; });

  auto* nt = app.add_subcommand("normal-tower", "compute the normal tower");
  common(nt);
  nt->callback([&] { action = [&] { return cmd_normal_tower(c); }; });

  auto* basis = app.add_subcommand("basis", "greedy basis of the compositum with a subfield");
  common(basis);
  basis->add_option("--subfield", sub)->required();
  basis->callback([&] { action = [&] { return cmd_basis(c, sub); }; });

  auto* member = app.add_subcommand("member", "search for a membership witness");
  common(member);
  member->add_option("--subfield", sub)->required();
  member->add_option("expr", expr)->required();
  member->callback([&] { action = [&] { return cmd_member(c, sub, expr); }; });

  auto* ode = app.add_subcommand("solve-ode", "solve D(w) = f + g*w within bounds");
  common(ode);
  ode->add_option("--f", f)->required();
  ode->add_option("--g", g);
  ode->callback([&] { action = [&] { return cmd_solve_ode(c, f, g); }; });

  auto* rec = app.add_subcommand("recover", "express a target through u and its derivatives");
  common(rec);
  rec->add_option("--from", from)->required();
  rec->add_option("--target", target)->required();
  rec->callback([&] { action = [&] { return cmd_recover(c, from, target); }; });

  auto* aut = app.add_subcommand("aut", "build and check a differential automorphism");
  common(aut);
  aut->add_option("--alpha", alpha, "translation shifts, e.g. [1, 0]");
  aut->add_option("--map", maps, "NAME->EXPR, repeatable");
  aut->add_option("--apply", applies, "expression to map, repeatable");
  aut->add_option("--probe", probes, "expression to test for being fixed, repeatable");
  aut->add_flag("--triangular", triangular, "report delta and shift per variable");
  aut->callback([&] { action = [&] { return cmd_aut(c, alpha, maps, applies, probes, triangular); }; });

  auto* st = app.add_subcommand("structure", "present a subfield as iterated antiderivatives");
  common(st);
  st->add_option("--subfield", sub)->required();
  st->callback([&] { action = [&] { return cmd_structure(c, sub); }; });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    c.load();
    return action();
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << '\n';
    switch (e.kind()) {
      case ErrorKind::BoundsExceeded: return kUnknown;
      case ErrorKind::NotDifferential: return kNegative;
      default: return kInputError;
    }
  }
}

}  // namespace diffield
