#include <random>

#include "doctest.h"
#include "support.hpp"
#include "omt/defset.hpp"

using namespace omt;

namespace {

PLMap single(const Cell& c, const AffineMap& m) { return PLMap{{{c, m}}}; }
const Cell kUnit = Cell::open(ExtRat(0), ExtRat(1));

}  // namespace

TEST_CASE("ExtRat order and literals") {
  CHECK(ExtRat::neg_inf() < ExtRat(Rat(-1000000)));
  CHECK(ExtRat(Rat(1000000)) < ExtRat::pos_inf());
  CHECK(ExtRat::parse("6/4") == ExtRat(Q(3, 2)));
  CHECK(ExtRat::parse("6/4").str() == "3/2");
  CHECK(ExtRat::parse("-inf").is_neg_inf());
  CHECK_THROWS_AS(ExtRat::parse("1/0"), Error);
  CHECK_THROWS_AS(ExtRat::parse("1.5"), Error);
  CHECK_THROWS_AS(ExtRat::pos_inf().value(), Error);
}

TEST_CASE("AffineMap text and algebra") {
  AffineMap m = AffineMap::parse("2*x-1");
  CHECK(m.str() == "2*x-1");
  CHECK(AffineMap::parse("x").str() == "1*x+0");
  CHECK(AffineMap::parse("-x+1/2").str() == "-1*x+1/2");
  CHECK(AffineMap::parse("-inf").beta.is_neg_inf());
  CHECK(compose(m, m.inverse()).is_identity());
  CHECK(m.apply_ext(ExtRat::neg_inf()).is_neg_inf());
  CHECK(AffineMap::parse("-3*x").apply_ext(ExtRat::neg_inf()).is_pos_inf());
  CHECK_THROWS_AS(AffineMap(Rat(1), ExtRat::pos_inf()), Error);
}

TEST_CASE("eval_pl") {
  CHECK(*eval_pl(single(kUnit, AffineMap::identity()), Q(1, 2)) == ExtRat(Q(1, 2)));
  CHECK(*eval_pl(single(kUnit, AffineMap::constant(ExtRat(3))), Q(1, 4)) == ExtRat(3));
  CHECK(*eval_pl(single(kUnit, AffineMap(Rat(2), ExtRat(-1))), Q(3, 4)) == ExtRat(Q(1, 2)));
  CHECK_FALSE(eval_pl(single(kUnit, AffineMap::identity()), Rat(2)).has_value());
}

TEST_CASE("limit_pl") {
  auto a = limit_pl(single(kUnit, AffineMap::identity()), ExtRat(0), Side::Right);
  REQUIRE(a);
  CHECK(*a == Limit{ExtRat(0), Approach::FromAbove});
  auto b = limit_pl(single(kUnit, AffineMap(Rat(-1), ExtRat(1))), ExtRat(0), Side::Right);
  REQUIRE(b);
  CHECK(*b == Limit{ExtRat(1), Approach::FromBelow});
  auto c = limit_pl(single(kUnit, AffineMap::constant(ExtRat(3))), ExtRat(1), Side::Left);
  REQUIRE(c);
  CHECK(*c == Limit{ExtRat(3), Approach::Stationary});
  CHECK_FALSE(limit_pl(single(kUnit, AffineMap::identity()), ExtRat(0), Side::Left));
  CHECK_FALSE(limit_pl(single(Cell::at(Rat(0)), AffineMap::identity()), ExtRat(0), Side::Right));
}

TEST_CASE("solve_pl") {
  CHECK(solve_pl(single(kUnit, AffineMap::identity()), single(kUnit, AffineMap::constant(ExtRat(Q(1, 2))))) ==
        DefSubset::point(Q(1, 2)));
  CHECK(solve_pl(single(kUnit, AffineMap::identity()), single(kUnit, AffineMap::identity())) ==
        DefSubset::from_cell(kUnit));
  CHECK(solve_pl(single(kUnit, AffineMap(Rat(2), ExtRat(-1))), single(kUnit, AffineMap::identity())).empty());
}

TEST_CASE("limit_pl matches evaluation along a shrinking sequence") {
  std::mt19937_64 rng(11);
  auto small = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int it = 0; it < 1000; ++it) {
    Rat a = Q(small(-4, 4), small(1, 4)), b = Q(small(-4, 4), small(1, 3));
    Rat lo = Q(small(-6, 0), 2);
    Rat hi = lo + Q(small(1, 6), 2);
    Cell c = Cell::open(ExtRat(lo), ExtRat(hi));
    AffineMap m(a, ExtRat(b));
    Side side = small(0, 1) ? Side::Right : Side::Left;
    Rat v = side == Side::Right ? lo : hi;
    auto lim = limit_pl(single(c, m), ExtRat(v), side);
    REQUIRE(lim);
    Rat target = lim->value.value();
    // |f(x_k) - L| = |a| * |x_k - v| exactly, so it is below 2^-k |a| (hi-lo)
    for (int k = 1; k <= 12; ++k) {
      Rat step = (hi - lo) / Rat(1 << k);
      Rat x = side == Side::Right ? Rat(v + step) : Rat(v - step);
      Rat fx = m.apply(x).value();
      Rat gap = abs(fx - target);
      CHECK(gap == abs(a) * step);
      if (sgn(a) > 0) CHECK(((fx > target) == (side == Side::Right)));
    }
    if (sgn(a) == 0) CHECK(lim->mode == Approach::Stationary);
  }
}

TEST_CASE("solve_pl equals integer cross-multiplication") {
  std::mt19937_64 rng(12);
  auto small = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int it = 0; it < 500; ++it) {
    long p1 = small(-3, 3), q1 = small(1, 3), r1 = small(-3, 3), s1 = small(1, 3);
    long p2 = small(-3, 3), q2 = small(1, 3), r2 = small(-3, 3), s2 = small(1, 3);
    Cell c = Cell::open(ExtRat(-4), ExtRat(4));
    PLMap f = single(c, AffineMap(Q(p1, q1), ExtRat(Q(r1, s1))));
    PLMap g = single(c, AffineMap(Q(p2, q2), ExtRat(Q(r2, s2))));
    DefSubset got = solve_pl(f, g);
    // (p1/q1 - p2/q2) x = r2/s2 - r1/s1, scaled by q1 q2 s1 s2
    long A = (p1 * q2 - p2 * q1) * s1 * s2;
    long B = (r2 * s1 - r1 * s2) * q1 * q2;
    if (A == 0) {
      CHECK(got == (B == 0 ? DefSubset::from_cell(c) : DefSubset{}));
    } else {
      Rat x(B, A);
      x.canonicalize();
      CHECK(got == (c.contains(x) ? DefSubset::point(x) : DefSubset{}));
    }
  }
}
