#pragma once

#include <map>
#include <string>
#include <vector>

#include "omin/bpoly.hpp"
#include "omin/rational.hpp"
#include "omin/upoly.hpp"

namespace omin {

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Zero coefficients are never stored.
class MPoly {
 public:
  using Exps = std::vector<int>;

  explicit MPoly(int nvars = 0) : n_(nvars) {}
  static MPoly constant(int nvars, const Q& c);
  static MPoly var(int nvars, int i);

  int nvars() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Q constant_term() const;
  int total_degree() const;
  const std::map<Exps, Q>& terms() const { return terms_; }
  void add_term(const Exps& e, const Q& c);

  Q eval(const std::vector<Q>& point) const;
  MPoly pow(int e) const;

  // k = 1: polynomial in x1; k = 2: x1 -> x, x2 -> y.
  UPoly to_upoly() const;
  BPoly to_bpoly() const;

  MPoly& operator+=(const MPoly& o);
  MPoly& operator-=(const MPoly& o);
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

  std::string str() const;

 private:
  int n_;
  std::map<Exps, Q> terms_;
};

}  // namespace omin
