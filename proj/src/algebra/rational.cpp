#include "omin/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace omin {

Q floor_q(const Q& q) {
  Z r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Q(r);
}

Q ceil_q(const Q& q) {
  Z r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Q(r);
}

Q abs_q(const Q& q) { return q < 0 ? Q(-q) : q; }

Q simplest_closed(const Q& a, const Q& b) {
  if (a > b) throw std::invalid_argument("simplest_closed: empty interval");
  if (a <= 0 && b >= 0) return Q(0);
  if (b < 0) return Q(-simplest_closed(-b, -a));
  Q fl = floor_q(a);
  if (fl == a) return a;
  if (fl + 1 <= b) return fl + 1;
  Q inner = simplest_closed(Q(1 / (b - fl)), Q(1 / (a - fl)));
  Q r = fl + 1 / inner;
  r.canonicalize();
  return r;
}

Q simplest_open(const Q& a, const Q& b) {
  if (!(a < b)) throw std::invalid_argument("simplest_open: empty interval");
  if (a < 0 && b > 0) return Q(0);
  if (b <= 0) return Q(-simplest_open(-b, -a));
  Q fl = floor_q(a);
  if (fl + 1 < b) return fl + 1;
  // (a, b) lies inside [fl, fl + 1]
  Q r;
  if (a == fl) {
    // x = fl + 1/y with y > 1/(b - fl)
    Q lo = 1 / (b - fl);
    r = fl + 1 / (floor_q(lo) + 1);
  } else {
    Q inner = simplest_open(Q(1 / (b - fl)), Q(1 / (a - fl)));
    r = fl + 1 / inner;
  }
  r.canonicalize();
  return r;
}

Q parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Q r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + text);
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    r.canonicalize();
    return r;
  }
  bool neg = false;
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') {
    neg = s[i] == '-';
    ++i;
  }
  std::string mant, expo;
  auto epos = s.find_first_of("eE", i);
  mant = s.substr(i, epos == std::string::npos ? std::string::npos : epos - i);
  if (epos != std::string::npos) expo = s.substr(epos + 1);
  auto dot = mant.find('.');
  std::string digits = mant;
  long scale = 0;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    scale = static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("bad rational: " + text);
  long e = 0;
  if (!expo.empty()) {
    try {
      e = std::stol(expo);
    } catch (...) {
      throw std::invalid_argument("bad exponent: " + text);
    }
  }
  Z num(digits, 10);
  long net = e - scale;
  Q r(num);
  Z ten = 10;
  Z p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(net < 0 ? -net : net));
  if (net >= 0)
    r *= Q(p);
  else
    r /= Q(p);
  if (neg) r = -r;
  r.canonicalize();
  return r;
}

std::string to_string(const Q& q) { return q.get_str(); }

int QInterval::sign() const {
  if (lo > 0) return 1;
  if (hi < 0) return -1;
  return 0;
}

QInterval operator+(const QInterval& a, const QInterval& b) { return {a.lo + b.lo, a.hi + b.hi}; }
QInterval operator-(const QInterval& a, const QInterval& b) { return {a.lo - b.hi, a.hi - b.lo}; }

QInterval operator*(const QInterval& a, const QInterval& b) {
  if (a.lo >= 0 && b.lo >= 0) return {a.lo * b.lo, a.hi * b.hi};
  if (a.lo == a.hi) {
    if (a.lo >= 0) return {a.lo * b.lo, a.lo * b.hi};
    return {a.lo * b.hi, a.lo * b.lo};
  }
  if (b.lo == b.hi) {
    if (b.lo >= 0) return {a.lo * b.lo, a.hi * b.lo};
    return {a.hi * b.lo, a.lo * b.lo};
  }
  Q p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
}

}  // namespace omin
