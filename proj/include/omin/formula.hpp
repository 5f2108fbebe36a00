#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "omin/mpoly.hpp"

namespace omin {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Terms over x1..xk (ambient) and y1..yl (parameters).
struct Expr {
  enum Op { Num, Var, Add, Sub, Mul, Pow, Exp, Log };
  Op op = Num;
  Q num;               // Num
  bool param = false;  // Var: y (true) or x (false)
  int var = 0;         // Var: zero-based index
  int power = 0;       // Pow
  std::vector<Expr> kids;

  static Expr number(const Q& q);
  static Expr x(int i);
  static Expr y(int i);
  static Expr node(Op op, std::vector<Expr> kids, int power = 0);

  bool transcendental() const;  // contains exp or log
  bool has_param() const;
  int max_var(bool param) const;  // highest index + 1, 0 if none

  // Replace y-variables by values and fold constants.
  Expr substitute(const std::vector<Q>& y) const;
  Expr folded() const;
  // Requires no parameters and no exp/log.
  MPoly to_mpoly(int k) const;

  std::string str() const;
  friend bool operator==(const Expr& a, const Expr& b);
};

enum class Rel { EQ, NE, LT, LE, GT, GE };

// sign of lhs - rhs satisfies rel
bool rel_holds(Rel r, int sign);
Rel rel_negate(Rel r);
const char* rel_name(Rel r);

struct Formula {
  enum Kind { True, False, Atom, Not, And, Or };
  Kind kind = True;
  Rel rel = Rel::EQ;  // Atom
  Expr lhs, rhs;      // Atom
  int index = -1;     // Atom: position in the member's atom list
  std::vector<Formula> kids;

  static Formula constant(bool v);
  static Formula atom(Rel r, Expr lhs, Expr rhs);
  static Formula node(Kind k, std::vector<Formula> kids);

  Formula substitute(const std::vector<Q>& y) const;
  // Constant-fold atoms and connectives (drop true conjuncts, false disjuncts).
  Formula folded() const;
  // Negation normal form: no Not nodes, relations flipped.
  Formula nnf(bool negate = false) const;
  // Only =, <=, >= after normalization.
  bool syntactically_closed() const;
  int max_var(bool param) const;

  std::string str() const;
  friend bool operator==(const Formula& a, const Formula& b);
};

Expr parse_expr(const std::string& text);
Formula parse_formula(const std::string& text);

}  // namespace omin
