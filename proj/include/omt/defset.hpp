#pragma once

#include <functional>
#include <string>
#include <vector>

#include "omt/exactline.hpp"

namespace omt {

struct Component {
  ExtRat lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;

  static Component point(const Rat& p) { return {ExtRat(p), ExtRat(p), true, true}; }
  static Component open(const ExtRat& a, const ExtRat& b) { return {a, b, false, false}; }
  bool is_point() const { return lo == hi; }
  friend bool operator==(const Component&, const Component&) = default;
};

enum class SetOp { Union, Intersect, Difference, ComplementIn };

class DefSubset {
 public:
  DefSubset() = default;
  static DefSubset normalize(std::vector<Component> raw);
  static DefSubset from_cell(const Cell& c);
  static DefSubset from_cells(const std::vector<Cell>& cs);
  static DefSubset point(const Rat& p) { return normalize({Component::point(p)}); }
  static DefSubset interval(const ExtRat& lo, const ExtRat& hi, bool lo_closed, bool hi_closed) {
    return normalize({{lo, hi, lo_closed, hi_closed}});
  }
  static DefSubset line() { return interval(ExtRat::neg_inf(), ExtRat::pos_inf(), false, false); }

  const std::vector<Component>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  bool contains(const Rat& x) const;
  bool contains_cell(const Cell& c) const;
  bool is_finite() const;
  bool bounded() const;
  // finite points (only meaningful when is_finite())
  std::vector<Rat> points() const;
  // endpoints of all components (finite ones)
  std::vector<Rat> endpoints() const;
  Rat sample() const;

  DefSubset unite(const DefSubset& o) const;
  DefSubset intersect(const DefSubset& o) const;
  DefSubset minus(const DefSubset& o) const;
  bool subset_of(const DefSubset& o) const { return minus(o).empty(); }

  // euclidean interior / closure (infinite ends stay open)
  DefSubset e_interior() const;
  DefSubset e_closure() const;
  DefSubset image(const AffineMap& m) const;      // non-constant m only
  DefSubset preimage(const AffineMap& m) const;   // non-constant m only

  std::string str() const;
  static DefSubset parse(const std::string& s);

  friend bool operator==(const DefSubset&, const DefSubset&) = default;

 private:
  std::vector<Component> comps_;
};

DefSubset combine(SetOp op, const DefSubset& a, const DefSubset& b);

// Side-approach values: a finite part plus the two infinite germs.
struct ValueSet {
  DefSubset finite;
  bool neg_inf = false;
  bool pos_inf = false;

  bool empty() const { return finite.empty() && !neg_inf && !pos_inf; }
  bool contains(const ExtRat& v) const;
  ValueSet unite(const ValueSet& o) const;
  ValueSet intersect(const ValueSet& o) const;
  ValueSet minus(const ValueSet& o) const;
  std::string str() const;
  friend bool operator==(const ValueSet&, const ValueSet&) = default;
};

ValueSet side_approach(Side side, const DefSubset& s);
ValueSet side_approach(Side side, const Cell& c);
std::vector<Cell> cells(const DefSubset& s);

// Cells refining s at the given breakpoints.
std::vector<Cell> refine_cells(const DefSubset& s, std::vector<Rat> cuts);

// {x in C : m(x) in V}
DefSubset preimage_in(const AffineMap& m, const ValueSet& v, const Cell& c);
// m(C) as values (constant maps may give infinite values)
ValueSet image_of(const AffineMap& m, const Cell& c);

}  // namespace omt
