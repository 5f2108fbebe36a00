#include "omin/mpoly.hpp"

#include <stdexcept>

namespace omin {

MPoly MPoly::constant(int nvars, const Q& c) {
  MPoly p(nvars);
  p.add_term(Exps(nvars, 0), c);
  return p;
}

MPoly MPoly::var(int nvars, int i) {
  MPoly p(nvars);
  Exps e(nvars, 0);
  e[i] = 1;
  p.add_term(e, Q(1));
  return p;
}

bool MPoly::is_constant() const {
  for (auto& [e, c] : terms_)
    for (int d : e)
      if (d) return false;
  return true;
}

Q MPoly::constant_term() const {
  auto it = terms_.find(Exps(n_, 0));
  return it == terms_.end() ? Q(0) : it->second;
}

int MPoly::total_degree() const {
  int best = -1;
  for (auto& [e, c] : terms_) {
    int d = 0;
    for (int v : e) d += v;
    best = std::max(best, d);
  }
  return best;
}

void MPoly::add_term(const Exps& e, const Q& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Q MPoly::eval(const std::vector<Q>& point) const {
  if (static_cast<int>(point.size()) != n_) throw std::invalid_argument("MPoly::eval: arity");
  Q sum = 0;
  for (auto& [e, c] : terms_) {
    Q t = c;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < e[i]; ++j) t *= point[i];
    sum += t;
  }
  return sum;
}

MPoly MPoly::pow(int e) const {
  MPoly r = constant(n_, Q(1)), b = *this;
  while (e > 0) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

UPoly MPoly::to_upoly() const {
  if (n_ != 1) throw std::invalid_argument("MPoly::to_upoly: needs one variable");
  std::vector<Q> c(std::max(total_degree() + 1, 0));
  for (auto& [e, q] : terms_) c[e[0]] = q;
  UPoly p(c);
  p.trim();
  return p;
}

BPoly MPoly::to_bpoly() const {
  if (n_ != 2) throw std::invalid_argument("MPoly::to_bpoly: needs two variables");
  BPoly r;
  for (auto& [e, q] : terms_) {
    std::vector<UPoly> c(e[1] + 1);
    c[e[1]] = UPoly::monomial(q, e[0]);
    r += BPoly(c);
  }
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  for (auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  for (auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator-(const MPoly& a) {
  MPoly r(a.n_);
  for (auto& [e, c] : a.terms_) r.terms_.emplace(e, -c);
  return r;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(a.n_);
  MPoly::Exps e(a.n_);
  for (auto& [ea, ca] : a.terms_)
    for (auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < a.n_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool unit = true;
    for (int d : e) unit = unit && d == 0;
    if (!s.empty()) s += c > 0 ? " + " : " - ";
    else if (c < 0) s += "-";
    Q a = abs_q(c);
    if (unit || a != 1) s += to_string(a);
    bool first = unit || a != 1;
    for (int i = 0; i < n_; ++i) {
      if (!e[i]) continue;
      if (first) s += "*";
      s += "x" + std::to_string(i + 1);
      if (e[i] > 1) s += "^" + std::to_string(e[i]);
      first = true;
    }
  }
  return s;
}

}  // namespace omin
