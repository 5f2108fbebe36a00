#pragma once

#include <gmpxx.h>

#include <string>

namespace omin {

using Q = mpq_class;
using Z = mpz_class;

inline int sgn(const Q& q) { return ::sgn(q); }

Q floor_q(const Q& q);
Q ceil_q(const Q& q);
Q abs_q(const Q& q);

// Rational with the smallest denominator (then smallest magnitude) in [a, b].
Q simplest_closed(const Q& a, const Q& b);
// Same over the open interval (a, b); requires a < b.
Q simplest_open(const Q& a, const Q& b);

// Accepts "3", "-3/4", "0.25", "1e-3".
Q parse_rational(const std::string& text);
std::string to_string(const Q& q);

// Closed interval of rationals.
struct QInterval {
  Q lo, hi;
  QInterval() = default;
  QInterval(const Q& a) : lo(a), hi(a) {}
  QInterval(const Q& a, const Q& b) : lo(a), hi(b) {}
  int sign() const;  // +1/-1 when 0 is excluded, 0 otherwise
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

QInterval operator+(const QInterval& a, const QInterval& b);
QInterval operator-(const QInterval& a, const QInterval& b);
QInterval operator*(const QInterval& a, const QInterval& b);

}  // namespace omin
