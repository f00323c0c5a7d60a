#include "diffield/expr.hpp"

#include <cctype>
#include <optional>

#include "diffield/error.hpp"

namespace diffield {

std::string to_string(const Rat& c) { return c.get_str(); }

namespace {

std::string monomial_string(const Exponents& e, std::span<const std::string> names) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += names[i];
    if (e[i] > 1) s += '^' + std::to_string(e[i]);
  }
  return s;
}

bool is_unit_monomial(const Exponents& e) {
  for (auto x : e)
    if (x != 0) return false;
  return true;
}

std::string term_string(const Term& t, std::span<const std::string> names) {
  Rat c = abs(t.coeff);
  if (is_unit_monomial(t.exps)) return to_string(c);
  std::string m = monomial_string(t.exps, names);
  if (c == 1) return m;
  return to_string(c) + '*' + m;
}

bool needs_parens_as_denominator(const MPoly& den) {
  if (den.size() > 1) return true;
  const auto& e = den.leading_term().exps;
  int factors = 0;
  for (auto x : e)
    if (x != 0) ++factors;
  return factors > 1;
}

// Recursive-descent parser parameterized on its semantics so the same grammar
// serves evaluation and name collection.
template <class Sem>
class Parser {
 public:
  using Value = typename Sem::Value;

  Parser(std::string_view text, Sem& sem) : text_(text), sem_(sem) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("'+', '-', '*', '/', '^' or end of input");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& expected) const {
    std::string where = pos_ >= text_.size() ? "end of input"
                                             : "'" + std::string(1, text_[pos_]) + "'";
    throw Error(ErrorKind::SyntaxError, "syntax error at position " + std::to_string(pos_) +
                                            " (" + where + "): expected " + expected);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value v = term();
    while (true) {
      if (accept('+')) {
        v = sem_.add(v, term());
      } else if (accept('-')) {
        v = sem_.sub(v, term());
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    while (true) {
      if (accept('*')) {
        v = sem_.mul(v, unary());
      } else if (accept('/')) {
        v = sem_.div(v, unary());
      } else {
        return v;
      }
    }
  }

  Value unary() {
    if (accept('-')) return sem_.neg(unary());
    return power();
  }

  Value power() {
    Value b = base();
    if (accept('^')) {
      bool paren = accept('(');
      bool negative = accept('-');
      skip_ws();
      std::string digits = read_digits();
      if (digits.empty()) fail("integer exponent");
      if (paren && !accept(')')) fail("')'");
      if (digits.size() > 6) fail("exponent of at most 6 digits");
      int e = std::stoi(digits);
      return sem_.pow(b, negative ? -e : e);
    }
    return b;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  Value base() {
    skip_ws();
    if (pos_ >= text_.size()) fail("number, name or '('");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return sem_.number(read_digits());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return sem_.name(std::string(text_.substr(start, pos_ - start)));
    }
    fail("number, name or '('");
  }

  std::string_view text_;
  Sem& sem_;
  std::size_t pos_ = 0;
};

struct EvalSemantics {
  using Value = RatFun;
  std::span<const std::string> names;

  Value number(const std::string& digits) const {
    return RatFun::constant(names.size(), Rat(Int(digits)));
  }
  Value name(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return RatFun::variable(names.size(), i);
    throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + n + "'");
  }
  Value add(const Value& a, const Value& b) const { return a + b; }
  Value sub(const Value& a, const Value& b) const { return a - b; }
  Value mul(const Value& a, const Value& b) const { return a * b; }
  Value div(const Value& a, const Value& b) const { return a / b; }
  Value neg(const Value& a) const { return -a; }
  Value pow(const Value& a, int e) const { return a.pow(e); }
};

struct CollectSemantics {
  struct Value {};
  std::vector<std::string> seen;

  Value number(const std::string&) { return {}; }
  Value name(const std::string& n) {
    for (const auto& s : seen)
      if (s == n) return {};
    seen.push_back(n);
    return {};
  }
  Value add(Value, Value) { return {}; }
  Value sub(Value, Value) { return {}; }
  Value mul(Value, Value) { return {}; }
  Value div(Value, Value) { return {}; }
  Value neg(Value) { return {}; }
  Value pow(Value, int) { return {}; }
};

}  // namespace

std::string to_string(const MPoly& p, std::span<const std::string> names) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : p.terms()) {
    if (first) {
      if (t.coeff < 0) s += '-';
    } else {
      s += t.coeff < 0 ? " - " : " + ";
    }
    s += term_string(t, names);
    first = false;
  }
  return s;
}

std::string to_string(const RatFun& u, std::span<const std::string> names) {
  std::string num = to_string(u.num(), names);
  if (u.den().is_constant()) return num;
  if (u.num().size() > 1) num = '(' + num + ')';
  std::string den = to_string(u.den(), names);
  if (needs_parens_as_denominator(u.den())) den = '(' + den + ')';
  return num + '/' + den;
}

RatFun parse_expr(std::string_view text, std::span<const std::string> names) {
  EvalSemantics sem{names};
  Parser<EvalSemantics> parser(text, sem);
  return parser.parse();
}

std::vector<std::string> referenced_names(std::string_view text) {
  CollectSemantics sem;
  Parser<CollectSemantics> parser(text, sem);
  parser.parse();
  return sem.seen;
}

}  // namespace diffield
