#include "omin/family.hpp"

#include <mpfr.h>

#include <sstream>

namespace omin {

namespace {

void collect_atoms(Formula& f, std::vector<MemberAtom>& out, int k) {
  if (f.kind == Formula::Atom) {
    f.index = static_cast<int>(out.size());
    Expr e = Expr::node(Expr::Sub, {f.lhs, f.rhs}).folded();
    MemberAtom a{f.rel, e.transcendental(), e, MPoly(k)};
    if (!a.numeric) a.poly = e.to_mpoly(k);
    out.push_back(std::move(a));
  }
  for (auto& c : f.kids) collect_atoms(c, out, k);
}

bool parse_bool(const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw ParseError("bad boolean: " + v);
}

}  // namespace

void FamilyTemplate::validate() const {
  if (k < 1 || l < 1) throw InvalidTemplate("dimensions must be positive");
  if (formula.max_var(false) > k) throw InvalidTemplate("formula uses an x-variable beyond k");
  if (formula.max_var(true) > l) throw InvalidTemplate("formula uses a y-variable beyond l");
  if (closed && !formula.syntactically_closed()) throw InvalidTemplate("closed template uses a strict or negated atom");
  if (has_numeric_atoms()) {
    std::vector<bool> seen(k, false);
    for (auto& b : box) {
      if (b.var < 0 || b.var >= k || b.lo > b.hi) throw InvalidTemplate("bad box bound");
      seen[b.var] = true;
    }
    for (bool s : seen)
      if (!s) throw InvalidTemplate("numeric atoms need a bounded box over every x-variable");
  }
}

bool FamilyTemplate::has_numeric_atoms() const {
  std::vector<const Formula*> todo = {&formula};
  while (!todo.empty()) {
    const Formula* f = todo.back();
    todo.pop_back();
    if (f->kind == Formula::Atom && (f->lhs.transcendental() || f->rhs.transcendental())) return true;
    for (auto& c : f->kids) todo.push_back(&c);
  }
  return false;
}

FamilyTemplate FamilyTemplate::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line, header;
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == ';' || line[p] == '#') continue;
    header = line;
    break;
  }
  if (header.empty()) throw ParseError("missing header line");
  FamilyTemplate t;
  bool got_k = false, got_l = false, got_closed = false;
  std::istringstream hs(header);
  std::string kv;
  while (hs >> kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("header entries are key=value: " + kv);
    std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
    try {
      if (key == "k") t.k = std::stoi(val), got_k = true;
      else if (key == "l") t.l = std::stoi(val), got_l = true;
      else if (key == "closed") t.closed = parse_bool(val), got_closed = true;
      else if (key == "name") t.name = val;
      else throw ParseError("unknown header key: " + key);
    } catch (const std::logic_error&) {
      throw ParseError("bad header value: " + kv);
    }
  }
  if (!got_k || !got_l || !got_closed) throw ParseError("header needs k, l and closed");
  std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  // an optional box form precedes the formula
  auto p = rest.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && rest.compare(p, 4, "(box") == 0) {
    int depth = 0;
    size_t q = p;
    for (; q < rest.size(); ++q) {
      if (rest[q] == '(') ++depth;
      if (rest[q] == ')' && --depth == 0) break;
    }
    if (q == rest.size()) throw ParseError("unterminated box");
    std::string body = rest.substr(p + 4, q - p - 4);
    rest = rest.substr(q + 1);
    for (char& c : body)
      if (c == '(' || c == ')') c = ' ';
    std::istringstream bs(body);
    std::string v, lo, hi;
    while (bs >> v) {
      if (!(bs >> lo >> hi) || v.size() < 2 || v[0] != 'x') throw ParseError("box entries are (xi lo hi)");
      t.box.push_back({std::stoi(v.substr(1)) - 1, parse_rational(lo), parse_rational(hi)});
    }
  }
  t.formula = parse_formula(rest);
  t.validate();
  return t;
}

std::string FamilyTemplate::str() const {
  std::string s = "k=" + std::to_string(k) + " l=" + std::to_string(l) + " closed=" + (closed ? "true" : "false");
  if (!name.empty()) s += " name=" + name;
  s += "\n";
  if (!box.empty()) {
    s += "(box";
    for (auto& b : box) s += " (x" + std::to_string(b.var + 1) + " " + to_string(b.lo) + " " + to_string(b.hi) + ")";
    s += ")\n";
  }
  return s + formula.str() + "\n";
}

bool MemberSet::numeric() const {
  for (auto& a : atoms)
    if (a.numeric) return true;
  return false;
}

std::vector<MPoly> MemberSet::polys() const {
  std::vector<MPoly> out;
  for (auto& a : atoms) {
    if (a.numeric) throw std::logic_error("member has numeric atoms");
    out.push_back(a.poly);
  }
  return out;
}

bool MemberSet::holds(const std::vector<int>& atom_signs) const {
  std::vector<Sign> s(atom_signs.size());
  for (size_t i = 0; i < s.size(); ++i) s[i] = static_cast<Sign>(atom_signs[i]);
  return eval_formula(formula_x, s) == Tri::True;
}

MemberSet instantiate(std::shared_ptr<const FamilyTemplate> t, const ParameterPoint& y) {
  if (static_cast<int>(y.size()) != t->l)
    throw DimensionMismatch("parameter has " + std::to_string(y.size()) + " coordinates, template expects " +
                            std::to_string(t->l));
  MemberSet m;
  m.source = t;
  m.parameter = y;
  m.formula_x = t->formula.substitute(y);
  collect_atoms(m.formula_x, m.atoms, t->k);
  return m;
}

FamilyTemplate union_of_families(const std::vector<FamilyTemplate>& ts) {
  if (ts.empty()) throw std::invalid_argument("union_of_families: no templates");
  FamilyTemplate u;
  u.k = ts[0].k;
  u.l = 0;
  u.closed = true;
  u.name = "union";
  for (auto& t : ts) {
    if (t.k != u.k) throw AmbientMismatch("templates differ in ambient dimension");
    u.l = std::max(u.l, t.l);
    u.closed = u.closed && t.closed;
    for (auto& b : t.box) {
      bool dup = false;
      for (auto& c : u.box) dup = dup || c.var == b.var;
      if (!dup) u.box.push_back(b);
    }
  }
  int m = static_cast<int>(ts.size()), base = u.l;
  std::vector<Formula> branches;
  for (int i = 0; i < m; ++i) {
    std::vector<Formula> conj;
    for (int j = 0; j < m; ++j)
      conj.push_back(Formula::atom(Rel::EQ, Expr::y(base + j), Expr::number(i == j ? 1 : 0)));
    conj.push_back(ts[i].formula);
    branches.push_back(Formula::node(Formula::And, conj));
  }
  u.formula = Formula::node(Formula::Or, branches);
  u.l = base + m;
  return u;
}

Tri eval_formula(const Formula& f, const std::vector<Sign>& s) {
  switch (f.kind) {
    case Formula::True: return Tri::True;
    case Formula::False: return Tri::False;
    case Formula::Atom: {
      Sign v = s.at(f.index);
      if (v == kUnknown) return Tri::Unknown;
      return rel_holds(f.rel, v) ? Tri::True : Tri::False;
    }
    case Formula::Not: {
      Tri t = eval_formula(f.kids[0], s);
      return t == Tri::Unknown ? t : t == Tri::True ? Tri::False : Tri::True;
    }
    default: {
      bool is_and = f.kind == Formula::And;
      Tri acc = is_and ? Tri::True : Tri::False;
      for (auto& c : f.kids) {
        Tri t = eval_formula(c, s);
        if (t == (is_and ? Tri::False : Tri::True)) return t;
        if (t == Tri::Unknown) acc = Tri::Unknown;
      }
      return acc;
    }
  }
}

namespace {

// Closed interval with MPFR endpoints rounded outward.
class Ival {
 public:
  explicit Ival(mpfr_prec_t p) {
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
  }
  Ival(const Ival& o) {
    mpfr_init2(lo, mpfr_get_prec(o.lo));
    mpfr_init2(hi, mpfr_get_prec(o.hi));
    mpfr_set(lo, o.lo, MPFR_RNDD);
    mpfr_set(hi, o.hi, MPFR_RNDU);
  }
  Ival& operator=(const Ival&) = delete;
  ~Ival() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  mpfr_prec_t prec() const { return mpfr_get_prec(lo); }
  mpfr_t lo, hi;
};

Ival from_q(const Q& q, mpfr_prec_t p) {
  Ival r(p);
  mpfr_set_q(r.lo, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Ival add(const Ival& a, const Ival& b) {
  Ival r(a.prec());
  mpfr_add(r.lo, a.lo, b.lo, MPFR_RNDD);
  mpfr_add(r.hi, a.hi, b.hi, MPFR_RNDU);
  return r;
}

Ival sub(const Ival& a, const Ival& b) {
  Ival r(a.prec());
  mpfr_sub(r.lo, a.lo, b.hi, MPFR_RNDD);
  mpfr_sub(r.hi, a.hi, b.lo, MPFR_RNDU);
  return r;
}

Ival neg(const Ival& a) {
  Ival r(a.prec());
  mpfr_neg(r.lo, a.hi, MPFR_RNDD);
  mpfr_neg(r.hi, a.lo, MPFR_RNDU);
  return r;
}

Ival mul(const Ival& a, const Ival& b) {
  Ival r(a.prec());
  mpfr_t t;
  mpfr_init2(t, a.prec());
  bool first = true;
  for (auto x : {a.lo, a.hi})
    for (auto y : {b.lo, b.hi}) {
      mpfr_mul(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, r.lo)) mpfr_set(r.lo, t, MPFR_RNDD);
      mpfr_mul(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, r.hi)) mpfr_set(r.hi, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

Ival eval_ival(const Expr& e, const std::vector<Q>& x, mpfr_prec_t p) {
  switch (e.op) {
    case Expr::Num: return from_q(e.num, p);
    case Expr::Var:
      if (e.param) throw std::logic_error("parameter left in member term");
      return from_q(x.at(e.var), p);
    case Expr::Add: {
      Ival r = eval_ival(e.kids[0], x, p);
      for (size_t i = 1; i < e.kids.size(); ++i) {
        Ival s = add(r, eval_ival(e.kids[i], x, p));
        mpfr_swap(r.lo, s.lo), mpfr_swap(r.hi, s.hi);
      }
      return r;
    }
    case Expr::Sub: {
      Ival r = eval_ival(e.kids[0], x, p);
      if (e.kids.size() == 1) return neg(r);
      for (size_t i = 1; i < e.kids.size(); ++i) {
        Ival s = sub(r, eval_ival(e.kids[i], x, p));
        mpfr_swap(r.lo, s.lo), mpfr_swap(r.hi, s.hi);
      }
      return r;
    }
    case Expr::Mul: {
      Ival r = eval_ival(e.kids[0], x, p);
      for (size_t i = 1; i < e.kids.size(); ++i) {
        Ival s = mul(r, eval_ival(e.kids[i], x, p));
        mpfr_swap(r.lo, s.lo), mpfr_swap(r.hi, s.hi);
      }
      return r;
    }
    case Expr::Pow: {
      Ival b = eval_ival(e.kids[0], x, p);
      Ival r = from_q(Q(1), p);
      for (int i = 0; i < e.power; ++i) {
        Ival s = mul(r, b);
        mpfr_swap(r.lo, s.lo), mpfr_swap(r.hi, s.hi);
      }
      // even powers are non-negative
      if (e.power % 2 == 0 && mpfr_sgn(r.lo) < 0) mpfr_set_zero(r.lo, 1);
      return r;
    }
    case Expr::Exp: {
      Ival a = eval_ival(e.kids[0], x, p), r(p);
      mpfr_exp(r.lo, a.lo, MPFR_RNDD);
      mpfr_exp(r.hi, a.hi, MPFR_RNDU);
      return r;
    }
    case Expr::Log: {
      Ival a = eval_ival(e.kids[0], x, p), r(p);
      if (mpfr_sgn(a.hi) <= 0) throw DomainViolation("log of a non-positive value");
      if (mpfr_sgn(a.lo) <= 0)
        mpfr_set_inf(r.lo, -1);
      else
        mpfr_log(r.lo, a.lo, MPFR_RNDD);
      mpfr_log(r.hi, a.hi, MPFR_RNDU);
      return r;
    }
  }
  throw std::logic_error("eval_ival: bad node");
}

}  // namespace

SignEval sign_eval(const MemberSet& m, const std::vector<Q>& point, int precision) {
  if (static_cast<int>(point.size()) != m.k()) throw DimensionMismatch("point dimension differs from k");
  if (precision < 2) throw std::invalid_argument("precision must be at least 2 bits");
  SignEval out;
  bool box_checked = false;
  for (auto& a : m.atoms) {
    if (!a.numeric) {
      out.signs.push_back(static_cast<Sign>(sgn(a.poly.eval(point))));
      continue;
    }
    if (!box_checked) {
      for (auto& b : m.source->box)
        if (point[b.var] < b.lo || point[b.var] > b.hi) throw DomainViolation("point outside the declared box");
      box_checked = true;
    }
    Ival v = eval_ival(a.expr, point, precision);
    Sign s = kUnknown;
    if (mpfr_nan_p(v.lo) || mpfr_nan_p(v.hi))
      s = kUnknown;
    else if (mpfr_sgn(v.lo) > 0)
      s = kPos;
    else if (mpfr_sgn(v.hi) < 0)
      s = kNeg;
    else if (mpfr_zero_p(v.lo) && mpfr_zero_p(v.hi))
      s = kZero;
    out.signs.push_back(s);
  }
  out.member = eval_formula(m.formula_x, out.signs);
  return out;
}

namespace templates {

namespace {
FamilyTemplate make(const std::string& text) { return FamilyTemplate::parse(text); }
}  // namespace

FamilyTemplate hyperplane() {
  return make("k=2 l=3 closed=true name=hyperplane\n(= (- (+ (* y1 x1) (* y2 x2)) y3) 0)");
}
FamilyTemplate circle() {
  return make("k=2 l=3 closed=true name=circle\n(= (- (+ (^ (- x1 y1) 2) (^ (- x2 y2) 2)) (^ y3 2)) 0)");
}
FamilyTemplate disk() {
  return make("k=2 l=3 closed=true name=disk\n(<= (- (+ (^ (- x1 y1) 2) (^ (- x2 y2) 2)) (^ y3 2)) 0)");
}
FamilyTemplate halfplane() {
  return make("k=2 l=3 closed=true name=halfplane\n(<= (- (+ (* y1 x1) (* y2 x2)) y3) 0)");
}
FamilyTemplate disk_complement() {
  return make("k=2 l=3 closed=true name=disk_complement\n(>= (- (+ (^ (- x1 y1) 2) (^ (- x2 y2) 2)) (^ y3 2)) 0)");
}
FamilyTemplate plane_segment() {
  // collinear with the direction d = (y3-y1, y4-y2), and 0 <= (x - y).d <= |d|^2
  return make(
      "k=2 l=4 closed=true name=plane_segment\n"
      "(and (= (- (* (- x1 y1) (- y4 y2)) (* (- x2 y2) (- y3 y1))) 0)"
      " (>= (+ (* (- x1 y1) (- y3 y1)) (* (- x2 y2) (- y4 y2))) 0)"
      " (<= (+ (* (- x1 y1) (- y3 y1)) (* (- x2 y2) (- y4 y2))) (+ (^ (- y3 y1) 2) (^ (- y4 y2) 2))))");
}
FamilyTemplate unit_disk() {
  return make("k=2 l=2 closed=true name=unit_disk\n(<= (+ (^ (- x1 y1) 2) (^ (- x2 y2) 2)) 1)");
}
FamilyTemplate unit_square() {
  return make(
      "k=2 l=2 closed=true name=unit_square\n"
      "(and (<= (- x1 y1) 1/2) (>= (- x1 y1) -1/2) (<= (- x2 y2) 1/2) (>= (- x2 y2) -1/2))");
}
FamilyTemplate plane_point() { return make("k=2 l=2 closed=true name=plane_point\n(and (= x1 y1) (= x2 y2))"); }
FamilyTemplate interval() { return make("k=1 l=2 closed=false name=interval\n(and (> x1 y1) (< x1 y2))"); }
FamilyTemplate segment() { return make("k=1 l=2 closed=true name=segment\n(and (>= x1 y1) (<= x1 y2))"); }
FamilyTemplate exp_monomial() {
  return make(
      "k=1 l=4 closed=false name=exp_monomial\n(box (x1 1/64 64))\n"
      "(and (> x1 0) (= (+ (* y1 (exp (* y3 (log x1)))) (* y2 (exp (* y4 (log x1))))) 0))");
}

}  // namespace templates

}  // namespace omin
