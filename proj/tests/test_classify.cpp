#include <doctest.h>

#include "oracles.hpp"
#include "omt/classify.hpp"
#include "omt/examples.hpp"
#include "support.hpp"

using namespace omt;

namespace {

struct Row {
  const char* name;
  const char* bits;  // hausdorff regular compact separable fdi
};

const Row kZoo[] = {
    {"euclidean", "TTFTT"}, {"discrete", "TTFFT"},    {"sorgenfrey", "TTFTT"},   {"upperlimit", "TTFTT"},
    {"split", "TTTTF"},     {"nsplit(3)", "TTFFF"},   {"alex(1)", "TTFTT"},      {"alex(2)", "TTFFF"},
    {"a7-const-inf", "FFFTF"}, {"a8-onepoint", "FFFTT"}, {"a9-nonregular", "TFFTF"},
};

char bit(bool b) { return b ? 'T' : 'F'; }

}  // namespace

TEST_CASE("predicate matrix on the named spaces") {
  for (const auto& row : kZoo) {
    Space s = example(row.name);
    std::string got;
    got += bit(is_hausdorff(s).ok);
    got += bit(regular_predicate(s));
    got += bit(is_definably_compact(s).ok);
    got += bit(is_definably_separable(s));
    got += bit(fdi_check(s).ok);
    CHECK_MESSAGE(got == row.bits, row.name);
  }
}

TEST_CASE("decomposition labels agree with neighbourhood sampling") {
  for (const char* name : {"euclidean", "discrete", "sorgenfrey", "upperlimit", "split", "nsplit(3)", "alex(2)",
                           "a8-hausdorff", "a9-nonregular"}) {
    Space s = example(name);
    Decomposition d = decompose_T2(s);
    for (const auto& p : d.pieces) {
      Rat m = p.cell.sample();
      for (Rat x : {m, Rat((m + Cell{false, p.cell.lo, ExtRat(m)}.sample()) / 2)}) {
        auto [r, l] = oracle::sides_near(s, {p.track, x}, Q(1, 64));
        PieceLabel want = r && l ? PieceLabel::Euclidean
                          : r    ? PieceLabel::RightHalfOpen
                          : l    ? PieceLabel::LeftHalfOpen
                                 : PieceLabel::Discrete;
        CHECK_MESSAGE(p.label == want, name << " " << p.cell.str());
      }
    }
    for (const Point& x : d.leftover) CHECK(s.contains(x));
  }
}

TEST_CASE("decomposition of the split interval") {
  Decomposition d = decompose_T2(make_split());
  CHECK(d.leftover.size() == 4);
  int left = 0, right = 0;
  for (const auto& p : d.pieces) {
    if (p.label == PieceLabel::LeftHalfOpen) ++left;
    if (p.label == PieceLabel::RightHalfOpen) ++right;
  }
  CHECK(left == 1);
  CHECK(right == 1);
  CHECK_THROWS_AS(decompose_T2(make_a7_const_inf()), Error);
}

TEST_CASE("classify_points by flags") {
  auto c = classify_points(make_split());
  CHECK(c[PieceLabel::LeftHalfOpen].at(0).str() == "(0,1]");
  CHECK(c[PieceLabel::RightHalfOpen].at(1).str() == "[0,1)");
  CHECK(c[PieceLabel::Discrete].at(0).str() == "{0}");
  CHECK(c[PieceLabel::Discrete].at(1).str() == "{1}");
}

TEST_CASE("tame interval in a non-Hausdorff space") {
  Space s = make_a7_const_inf();
  Piece p = tame_interval_T1(s);
  CHECK(p.label == PieceLabel::Euclidean);
  CHECK(p.cell.bounded());
  Space f;
  f.add_track(0, DefSubset::parse("{0} | {1}"));
  f.canonicalize();
  CHECK_THROWS_AS(tame_interval_T1(f), Error);
}

TEST_CASE("regularity witness for the non-regular example") {
  Space s = make_a9_nonregular();
  RegularResult r = is_regular(s);
  REQUIRE_FALSE(r.ok);
  CHECK(s.contains(r.witness));
  CHECK(r.missing == Anchor{0, ExtRat(r.witness.pos), Side::Right});
  CHECK_THROWS_AS(is_regular(make_a7_const_inf()), Error);
  CHECK_FALSE(regular_predicate(make_a7_const_inf()));
}

TEST_CASE("compactness") {
  CHECK(is_definably_compact(make_split()).ok);
  CompactResult e = is_definably_compact(make_euclidean());
  REQUIRE_FALSE(e.ok);
  CHECK(e.germ == Anchor{0, ExtRat(0), Side::Right});
  CHECK(e.witness.str() == "track=0; map=1*t+0; domain=(0,1); end=a");
  CHECK(is_near_compact(make_euclidean()));
  CHECK(is_near_compact(make_split()));
  CHECK_FALSE(is_near_compact(make_discrete()));
  CHECK(uncovered_germs(make_split()).empty());
  // every uncovered germ is confirmed by the curve sampler
  for (const char* name : {"euclidean", "sorgenfrey", "split", "alex(2)", "a8-hausdorff"}) {
    Space s = example(name);
    CHECK_MESSAGE(compactness_by_curves(s, 200, 7) == is_definably_compact(s).ok, name);
  }
}

TEST_CASE("fdi witness has an infinite frontier") {
  for (const char* name : {"split", "nsplit(3)", "alex(2)", "a9-nonregular"}) {
    FdiResult f = fdi_check(example(name));
    REQUIRE_FALSE(f.ok);
    CHECK_MESSAGE(!ts_finite(f.witness_frontier), name);
  }
  FdiResult f = fdi_check(make_split());
  CHECK(ts_str(f.witness_frontier).find("0") != std::string::npos);
}

TEST_CASE("weight classes") {
  CHECK(weight_class(make_euclidean()) == WeightClass::DensityWeight);
  CHECK(weight_class(make_sorgenfrey()) == WeightClass::CardinalityWeight);
  CHECK(weight_class(make_split()) == WeightClass::CardinalityWeight);
  Space f;
  f.add_track(0, DefSubset::parse("{0} | {1}"));
  f.canonicalize();
  CHECK(weight_class(f) == WeightClass::Finite);
  CHECK(std::string(weight_name(WeightClass::CardinalityWeight)) == "cardinality");
}

TEST_CASE("connected components") {
  Components a = connected_components(make_alex(2));
  REQUIRE(a.parts.size() == 1);
  CHECK(ts_str(a.parts[0]) == ts_str(TrackSet{{0, DefSubset::parse("(0,1)")}}));
  CHECK(ts_equal(a.singletons, TrackSet{{1, DefSubset::parse("(0,1)")}}));
  Components sg = connected_components(make_sorgenfrey());
  CHECK(sg.parts.empty());
  Components e = connected_components(make_euclidean());
  CHECK(e.parts.size() == 1);
  CHECK_THROWS_AS(connected_components(make_a9_nonregular()), Error);
}
