#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omin/real_algebraic.hpp"

namespace omin {

// A point of the extended line: -oo, a real algebraic number, or +oo.
struct XReal {
  int inf = 0;  // -1, 0, +1
  RealAlg v;
  XReal() = default;
  XReal(const RealAlg& a) : v(a) {}
  XReal(const Q& a) : v(a) {}
  XReal(int a) : v(Q(a)) {}
  static XReal neg_inf() { XReal r; r.inf = -1; return r; }
  static XReal pos_inf() { XReal r; r.inf = 1; return r; }
  bool finite() const { return inf == 0; }
  std::string str() const;
};
int compare(const XReal& a, const XReal& b);

struct Piece {
  bool point;  // {lo} when true, otherwise the open interval (lo, hi)
  XReal lo, hi;
  static Piece at(const XReal& a) { return {true, a, a}; }
  static Piece open(const XReal& a, const XReal& b) { return {false, a, b}; }
};

struct MalformedPiece : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotClosed : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RadiusOrder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Definable subset of the line in canonical form. Stored as the sorted
// breakpoints p_0 < ... < p_{m-1} and membership flags of the 2m+1
// elementary regions (-oo,p_0), {p_0}, (p_0,p_1), ..., {p_{m-1}}, (p_{m-1},oo).
// Canonical: no breakpoint whose point and both neighbours agree.
class IntervalSet {
 public:
  IntervalSet() : in_{false} {}
  static IntervalSet empty() { return IntervalSet(); }
  static IntervalSet line();
  static IntervalSet point(const RealAlg& a);
  static IntervalSet open(const XReal& a, const XReal& b);
  static IntervalSet closed(const RealAlg& a, const RealAlg& b);
  static IntervalSet finite(const std::vector<RealAlg>& pts);
  static IntervalSet normalize(const std::vector<Piece>& raw);
  static IntervalSet parse(const std::string& text);

  const std::vector<RealAlg>& breakpoints() const { return pts_; }
  // region 2i+1 is {p_i}; region 2i is the open interval left of p_i
  const std::vector<bool>& regions() const { return in_; }
  std::vector<Piece> pieces() const;
  bool is_empty() const;
  bool bounded() const { return !in_.front() && !in_.back(); }
  bool contains(const Q& x) const;
  bool contains(const RealAlg& x) const;

  IntervalSet operator|(const IntervalSet& o) const;
  IntervalSet operator&(const IntervalSet& o) const;
  IntervalSet operator-(const IntervalSet& o) const;
  IntervalSet complement() const;
  IntervalSet closure() const;
  IntervalSet interior() const;
  bool is_closed() const { return closure() == *this; }
  bool subset_of(const IntervalSet& o) const { return (*this - o).is_empty(); }

  // Connected components as closed-or-open runs, in order; each is an
  // IntervalSet with one component.
  std::vector<IntervalSet> components() const;

  friend bool operator==(const IntervalSet& a, const IntervalSet& b);
  friend bool operator!=(const IntervalSet& a, const IntervalSet& b) { return !(a == b); }

  std::string str() const;

 private:
  IntervalSet(std::vector<RealAlg> pts, std::vector<bool> in);
  void canonicalize();
  template <class F>
  static IntervalSet combine(const IntervalSet& a, const IntervalSet& b, F f);

  std::vector<RealAlg> pts_;
  std::vector<bool> in_;
};

int b0_1d(const IntervalSet& a);

enum class TubeKind { OT, CT, BT, Ann, AnnBar };

// Distance tubes around a closed X inside V. eps2 is used by Ann/AnnBar only.
IntervalSet tube(TubeKind kind, const IntervalSet& X, const IntervalSet& V, const Q& eps1,
                 const std::optional<Q>& eps2 = std::nullopt);

// Radii at which (CT(X,r), CT(X,r) & Y) changes type: half of every gap
// between consecutive components of X, and d and d/2 for every positive
// distance d between an endpoint of X and an endpoint of Y.
std::vector<RealAlg> critical_radii(const IntervalSet& X, const IntervalSet& Y);

}  // namespace omin
