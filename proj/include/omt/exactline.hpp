#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "omt/error.hpp"

namespace omt {

using Rat = mpq_class;

enum class Side { Right = 0, Left = 1 };

inline Side flip(Side s) { return s == Side::Right ? Side::Left : Side::Right; }
const char* side_name(Side s);

// Rational or one of -inf/+inf.  Infinities are ordered but never
// take part in arithmetic.
class ExtRat {
 public:
  enum class Kind : signed char { NegInf = -1, Finite = 0, PosInf = 1 };

  ExtRat() : kind_(Kind::Finite), v_(0) {}
  ExtRat(const Rat& v) : kind_(Kind::Finite), v_(v) { v_.canonicalize(); }
  ExtRat(long v) : kind_(Kind::Finite), v_(v) {}
  ExtRat(int v) : kind_(Kind::Finite), v_(v) {}

  static ExtRat neg_inf() { return ExtRat(Kind::NegInf); }
  static ExtRat pos_inf() { return ExtRat(Kind::PosInf); }

  Kind kind() const { return kind_; }
  bool finite() const { return kind_ == Kind::Finite; }
  bool is_neg_inf() const { return kind_ == Kind::NegInf; }
  bool is_pos_inf() const { return kind_ == Kind::PosInf; }
  const Rat& value() const;

  std::string str() const;
  static ExtRat parse(const std::string& s);

  friend bool operator==(const ExtRat& a, const ExtRat& b);
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  explicit ExtRat(Kind k) : kind_(k), v_(0) {}
  Kind kind_;
  Rat v_;
};

std::string rat_str(const Rat& r);
Rat parse_rat(const std::string& s);
int sgn(const Rat& r);

// x -> alpha*x + beta.  beta may be infinite only for constant maps.
struct AffineMap {
  Rat alpha{1};
  ExtRat beta{0};

  AffineMap() = default;
  AffineMap(const Rat& a, const ExtRat& b);
  static AffineMap identity() { return AffineMap(Rat(1), ExtRat(0)); }
  static AffineMap constant(const ExtRat& c) { return AffineMap(Rat(0), c); }

  bool is_constant() const { return sgn(alpha) == 0; }
  bool increasing() const { return sgn(alpha) > 0; }
  bool decreasing() const { return sgn(alpha) < 0; }
  bool is_identity() const { return alpha == 1 && beta == ExtRat(0); }

  ExtRat apply(const Rat& x) const;
  // value at x, extended to +-inf by limits
  ExtRat apply_ext(const ExtRat& x) const;
  AffineMap inverse() const;
  std::string str() const;
  static AffineMap parse(const std::string& s);

  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.alpha == b.alpha && a.beta == b.beta;
  }
  friend std::strong_ordering operator<=>(const AffineMap& a, const AffineMap& b);
};

// g o f
AffineMap compose(const AffineMap& g, const AffineMap& f);

struct Cell {
  bool point = true;
  ExtRat lo, hi;

  static Cell at(const Rat& p) { return Cell{true, ExtRat(p), ExtRat(p)}; }
  static Cell open(const ExtRat& lo, const ExtRat& hi);

  bool contains(const Rat& x) const;
  bool bounded() const { return lo.finite() && hi.finite(); }
  // some point strictly inside
  Rat sample() const;
  std::string str() const;

  friend bool operator==(const Cell& a, const Cell& b) {
    return a.point == b.point && a.lo == b.lo && a.hi == b.hi;
  }
};

// cells ordered along the line, points before intervals starting there
bool cell_less(const Cell& a, const Cell& b);

struct PLMap {
  std::vector<std::pair<Cell, AffineMap>> pieces;
};

enum class Approach { FromAbove, FromBelow, Stationary };
const char* approach_name(Approach a);

struct Limit {
  ExtRat value;
  Approach mode;
  friend bool operator==(const Limit&, const Limit&) = default;
};

std::optional<ExtRat> eval_pl(const PLMap& f, const Rat& x);
std::optional<Limit> limit_pl(const PLMap& f, const ExtRat& v, Side side);

class DefSubset;
DefSubset solve_pl(const PLMap& f, const PLMap& g);

// {x in C : f(x) = g(x)}
DefSubset agree_on(const AffineMap& f, const AffineMap& g, const Cell& c);

}  // namespace omt
