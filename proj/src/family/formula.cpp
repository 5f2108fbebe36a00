#include "omin/formula.hpp"

#include <cctype>
#include <sstream>

namespace omin {

Expr Expr::number(const Q& q) {
  Expr e;
  e.op = Num;
  e.num = q;
  return e;
}

Expr Expr::x(int i) {
  Expr e;
  e.op = Var;
  e.var = i;
  return e;
}

Expr Expr::y(int i) {
  Expr e = x(i);
  e.param = true;
  return e;
}

Expr Expr::node(Op op, std::vector<Expr> kids, int power) {
  Expr e;
  e.op = op;
  e.kids = std::move(kids);
  e.power = power;
  return e;
}

bool Expr::transcendental() const {
  if (op == Exp || op == Log) return true;
  for (auto& k : kids)
    if (k.transcendental()) return true;
  return false;
}

bool Expr::has_param() const { return max_var(true) > 0; }

int Expr::max_var(bool want_param) const {
  if (op == Var) return param == want_param ? var + 1 : 0;
  int m = 0;
  for (auto& k : kids) m = std::max(m, k.max_var(want_param));
  return m;
}

Expr Expr::substitute(const std::vector<Q>& y) const {
  if (op == Var && param) {
    if (var >= static_cast<int>(y.size())) throw std::out_of_range("substitute: parameter index");
    return number(y[var]);
  }
  Expr e = *this;
  for (auto& k : e.kids) k = k.substitute(y);
  return e.folded();
}

Expr Expr::folded() const {
  if (op == Num || op == Var) return *this;
  std::vector<Expr> ks;
  ks.reserve(kids.size());
  for (auto& k : kids) ks.push_back(k.folded());
  auto all_num = [&] {
    for (auto& k : ks)
      if (k.op != Num) return false;
    return true;
  };
  switch (op) {
    case Add:
    case Mul: {
      Q acc = op == Add ? Q(0) : Q(1);
      std::vector<Expr> rest;
      for (auto& k : ks) {
        if (k.op == Num)
          acc = op == Add ? Q(acc + k.num) : Q(acc * k.num);
        else
          rest.push_back(k);
      }
      if (op == Mul && acc == 0) return number(0);
      if (rest.empty()) return number(acc);
      if (acc != (op == Add ? 0 : 1)) rest.push_back(number(acc));
      if (rest.size() == 1) return rest[0];
      return node(op, rest);
    }
    case Sub: {
      if (ks.size() == 1) return ks[0].op == Num ? number(-ks[0].num) : node(Sub, ks);
      if (all_num()) {
        Q acc = ks[0].num;
        for (size_t i = 1; i < ks.size(); ++i) acc -= ks[i].num;
        return number(acc);
      }
      std::vector<Expr> rest = {ks[0]};
      for (size_t i = 1; i < ks.size(); ++i)
        if (!(ks[i].op == Num && ks[i].num == 0)) rest.push_back(ks[i]);
      if (rest.size() == 1) return rest[0];
      if (rest[0].op == Num && rest[0].num == 0 && rest.size() == 2) return node(Sub, {rest[1]});
      return node(Sub, rest);
    }
    case Pow: {
      if (power == 0) return number(1);
      if (power == 1) return ks[0];
      if (ks[0].op == Num) {
        Q r = 1;
        for (int i = 0; i < power; ++i) r *= ks[0].num;
        return number(r);
      }
      return node(Pow, ks, power);
    }
    case Exp:
      if (ks[0].op == Num && ks[0].num == 0) return number(1);
      return node(Exp, ks);
    case Log:
      if (ks[0].op == Num && ks[0].num == 1) return number(0);
      return node(Log, ks);
    default:
      return *this;
  }
}

MPoly Expr::to_mpoly(int k) const {
  switch (op) {
    case Num:
      return MPoly::constant(k, num);
    case Var:
      if (param) throw std::invalid_argument("to_mpoly: parameter left in term");
      if (var >= k) throw std::invalid_argument("to_mpoly: variable index out of range");
      return MPoly::var(k, var);
    case Add: {
      MPoly r(k);
      for (auto& c : kids) r += c.to_mpoly(k);
      return r;
    }
    case Sub: {
      if (kids.size() == 1) return -kids[0].to_mpoly(k);
      MPoly r = kids[0].to_mpoly(k);
      for (size_t i = 1; i < kids.size(); ++i) r -= kids[i].to_mpoly(k);
      return r;
    }
    case Mul: {
      MPoly r = MPoly::constant(k, 1);
      for (auto& c : kids) r = r * c.to_mpoly(k);
      return r;
    }
    case Pow:
      return kids[0].to_mpoly(k).pow(power);
    default:
      throw std::invalid_argument("to_mpoly: transcendental term");
  }
}

std::string Expr::str() const {
  switch (op) {
    case Num:
      return to_string(num);
    case Var:
      return (param ? "y" : "x") + std::to_string(var + 1);
    case Pow:
      return "(^ " + kids[0].str() + " " + std::to_string(power) + ")";
    default: {
      static const char* names[] = {"", "", "+", "-", "*", "^", "exp", "log"};
      std::string s = std::string("(") + names[op];
      for (auto& k : kids) s += " " + k.str();
      return s + ")";
    }
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.op != b.op) return false;
  switch (a.op) {
    case Expr::Num:
      return a.num == b.num;
    case Expr::Var:
      return a.param == b.param && a.var == b.var;
    default:
      return a.power == b.power && a.kids == b.kids;
  }
}

bool rel_holds(Rel r, int s) {
  switch (r) {
    case Rel::EQ: return s == 0;
    case Rel::NE: return s != 0;
    case Rel::LT: return s < 0;
    case Rel::LE: return s <= 0;
    case Rel::GT: return s > 0;
    case Rel::GE: return s >= 0;
  }
  return false;
}

Rel rel_negate(Rel r) {
  switch (r) {
    case Rel::EQ: return Rel::NE;
    case Rel::NE: return Rel::EQ;
    case Rel::LT: return Rel::GE;
    case Rel::LE: return Rel::GT;
    case Rel::GT: return Rel::LE;
    case Rel::GE: return Rel::LT;
  }
  return r;
}

const char* rel_name(Rel r) {
  static const char* n[] = {"=", "!=", "<", "<=", ">", ">="};
  return n[static_cast<int>(r)];
}

Formula Formula::constant(bool v) {
  Formula f;
  f.kind = v ? True : False;
  return f;
}

Formula Formula::atom(Rel r, Expr lhs, Expr rhs) {
  Formula f;
  f.kind = Atom;
  f.rel = r;
  f.lhs = std::move(lhs);
  f.rhs = std::move(rhs);
  return f;
}

Formula Formula::node(Kind k, std::vector<Formula> kids) {
  Formula f;
  f.kind = k;
  f.kids = std::move(kids);
  return f;
}

Formula Formula::substitute(const std::vector<Q>& y) const {
  Formula f = *this;
  if (kind == Atom) {
    f.lhs = lhs.substitute(y);
    f.rhs = rhs.substitute(y);
  }
  for (auto& k : f.kids) k = k.substitute(y);
  return f.folded();
}

Formula Formula::folded() const {
  switch (kind) {
    case True:
    case False:
      return *this;
    case Atom: {
      Formula f = atom(rel, lhs.folded(), rhs.folded());
      if (f.lhs.op == Expr::Num && f.rhs.op == Expr::Num) return constant(rel_holds(rel, sgn(Q(f.lhs.num - f.rhs.num))));
      return f;
    }
    case Not: {
      Formula k = kids[0].folded();
      if (k.kind == True || k.kind == False) return constant(k.kind == False);
      return node(Not, {k});
    }
    default: {
      Kind absorb = kind == And ? False : True;
      std::vector<Formula> ks;
      for (auto& k : kids) {
        Formula g = k.folded();
        if (g.kind == absorb) return constant(absorb == True);
        if (g.kind == True || g.kind == False) continue;
        ks.push_back(std::move(g));
      }
      if (ks.empty()) return constant(kind == And);
      if (ks.size() == 1) return ks[0];
      return node(kind, ks);
    }
  }
}

Formula Formula::nnf(bool negate) const {
  switch (kind) {
    case True:
    case False:
      return constant((kind == True) != negate);
    case Atom: {
      Formula f = *this;
      if (negate) f.rel = rel_negate(rel);
      return f;
    }
    case Not:
      return kids[0].nnf(!negate);
    default: {
      std::vector<Formula> ks;
      for (auto& k : kids) ks.push_back(k.nnf(negate));
      Kind k = kind;
      if (negate) k = kind == And ? Or : And;
      Formula f = node(k, ks);
      return f;
    }
  }
}

bool Formula::syntactically_closed() const {
  std::vector<const Formula*> todo = {};
  Formula n = nnf();
  todo.push_back(&n);
  while (!todo.empty()) {
    const Formula* f = todo.back();
    todo.pop_back();
    if (f->kind == Atom && (f->rel == Rel::NE || f->rel == Rel::LT || f->rel == Rel::GT)) return false;
    for (auto& k : f->kids) todo.push_back(&k);
  }
  return true;
}

int Formula::max_var(bool param) const {
  int m = kind == Atom ? std::max(lhs.max_var(param), rhs.max_var(param)) : 0;
  for (auto& k : kids) m = std::max(m, k.max_var(param));
  return m;
}

std::string Formula::str() const {
  switch (kind) {
    case True: return "true";
    case False: return "false";
    case Atom: return std::string("(") + rel_name(rel) + " " + lhs.str() + " " + rhs.str() + ")";
    default: {
      std::string s = kind == Not ? "(not" : kind == And ? "(and" : "(or";
      for (auto& k : kids) s += " " + k.str();
      return s + ")";
    }
  }
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == Formula::Atom) return a.rel == b.rel && a.lhs == b.lhs && a.rhs == b.rhs;
  return a.kids == b.kids;
}

namespace {

// S-expression reader shared by terms and formulas.
struct Sexp {
  std::string atom;  // empty for lists
  std::vector<Sexp> items;
  bool is_list = false;
};

class Reader {
 public:
  explicit Reader(const std::string& t) : t_(t) {}

  Sexp read() {
    skip();
    if (i_ >= t_.size()) throw ParseError("unexpected end of input");
    Sexp s;
    if (t_[i_] == '(') {
      ++i_;
      s.is_list = true;
      for (;;) {
        skip();
        if (i_ >= t_.size()) throw ParseError("missing ')'");
        if (t_[i_] == ')') {
          ++i_;
          break;
        }
        s.items.push_back(read());
      }
    } else if (t_[i_] == ')') {
      throw ParseError("unexpected ')'");
    } else {
      size_t j = i_;
      while (j < t_.size() && !std::isspace(static_cast<unsigned char>(t_[j])) && t_[j] != '(' && t_[j] != ')') ++j;
      s.atom = t_.substr(i_, j - i_);
      i_ = j;
    }
    return s;
  }

  void expect_end() {
    skip();
    if (i_ != t_.size()) throw ParseError("trailing input after expression");
  }

 private:
  void skip() {
    while (i_ < t_.size()) {
      if (std::isspace(static_cast<unsigned char>(t_[i_]))) {
        ++i_;
      } else if (t_[i_] == ';') {
        while (i_ < t_.size() && t_[i_] != '\n') ++i_;
      } else {
        break;
      }
    }
  }
  const std::string& t_;
  size_t i_ = 0;
};

Expr to_expr(const Sexp& s) {
  if (!s.is_list) {
    const std::string& a = s.atom;
    if ((a[0] == 'x' || a[0] == 'y') && a.size() > 1 && std::isdigit(static_cast<unsigned char>(a[1]))) {
      int i = std::stoi(a.substr(1));
      if (i < 1) throw ParseError("variable indices start at 1: " + a);
      return a[0] == 'x' ? Expr::x(i - 1) : Expr::y(i - 1);
    }
    try {
      return Expr::number(parse_rational(a));
    } catch (const std::exception&) {
      throw ParseError("bad term token: " + a);
    }
  }
  if (s.items.empty() || s.items[0].is_list) throw ParseError("term list must start with an operator");
  const std::string& op = s.items[0].atom;
  std::vector<Expr> args;
  for (size_t i = 1; i < s.items.size(); ++i) {
    if (op == "^" && i == 2) break;
    args.push_back(to_expr(s.items[i]));
  }
  auto need = [&](size_t lo, size_t hi) {
    size_t n = s.items.size() - 1;
    if (n < lo || n > hi) throw ParseError("wrong arity for " + op);
  };
  if (op == "+") return need(1, 1u << 30), Expr::node(Expr::Add, args);
  if (op == "*") return need(1, 1u << 30), Expr::node(Expr::Mul, args);
  if (op == "-") return need(1, 1u << 30), Expr::node(Expr::Sub, args);
  if (op == "exp") return need(1, 1), Expr::node(Expr::Exp, args);
  if (op == "log") return need(1, 1), Expr::node(Expr::Log, args);
  if (op == "^") {
    need(2, 2);
    const Sexp& e = s.items[2];
    if (e.is_list) throw ParseError("exponent must be a non-negative integer literal");
    for (char c : e.atom)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError("exponent must be a non-negative integer literal");
    return Expr::node(Expr::Pow, args, std::stoi(e.atom));
  }
  throw ParseError("unknown operator: " + op);
}

Formula to_formula(const Sexp& s) {
  if (!s.is_list) {
    if (s.atom == "true") return Formula::constant(true);
    if (s.atom == "false") return Formula::constant(false);
    throw ParseError("bad formula token: " + s.atom);
  }
  if (s.items.empty() || s.items[0].is_list) throw ParseError("formula list must start with an operator");
  const std::string& op = s.items[0].atom;
  if (op == "and" || op == "or" || op == "not") {
    std::vector<Formula> ks;
    for (size_t i = 1; i < s.items.size(); ++i) ks.push_back(to_formula(s.items[i]));
    if (op == "not") {
      if (ks.size() != 1) throw ParseError("not takes one argument");
      return Formula::node(Formula::Not, ks);
    }
    return Formula::node(op == "and" ? Formula::And : Formula::Or, ks);
  }
  static const std::pair<const char*, Rel> rels[] = {{"=", Rel::EQ}, {"!=", Rel::NE}, {"<", Rel::LT},
                                                     {"<=", Rel::LE}, {">", Rel::GT}, {">=", Rel::GE}};
  for (auto& [name, r] : rels) {
    if (op != name) continue;
    if (s.items.size() != 3) throw ParseError(std::string("comparison takes two terms: ") + name);
    return Formula::atom(r, to_expr(s.items[1]), to_expr(s.items[2]));
  }
  throw ParseError("unknown connective: " + op);
}

}  // namespace

Expr parse_expr(const std::string& text) {
  Reader r(text);
  Expr e = to_expr(r.read());
  r.expect_end();
  return e;
}

Formula parse_formula(const std::string& text) {
  Reader r(text);
  Formula f = to_formula(r.read());
  r.expect_end();
  return f;
}

}  // namespace omin
