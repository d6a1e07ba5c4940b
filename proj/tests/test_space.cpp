#include "doctest.h"
#include "omt/examples.hpp"
#include "omt/io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace omt;

namespace {

DefSubset S(const char* s) { return DefSubset::parse(s); }
TrackSet T(std::initializer_list<std::pair<const int, DefSubset>> l) { return TrackSet(l); }

Space alex2_without_left() {
  Space s = make_alex(2);
  std::erase_if(s.branches, [](const Branch& b) { return b.side == Side::Left; });
  return s;
}

}  // namespace

TEST_CASE("anchors") {
  auto a = anchors(make_euclidean(), {0, Q(1, 2)});
  CHECK(a == std::set<Anchor>{{0, ExtRat(Q(1, 2)), Side::Right}, {0, ExtRat(Q(1, 2)), Side::Left}});
  auto b = anchors(make_split(), {0, Q(1, 2)});
  CHECK(b == std::set<Anchor>{{0, ExtRat(Q(1, 2)), Side::Left}, {1, ExtRat(Q(1, 2)), Side::Left}});
  CHECK(anchors(make_discrete(), {0, Q(1, 3)}).empty());
  CHECK_THROWS_AS(anchors(make_discrete(), {0, Q(2)}), Error);
}

TEST_CASE("basic_nbhd") {
  CHECK(ts_equal(basic_nbhd(make_sorgenfrey(), {0, Q(1, 2)}, Q(1, 4)), T({{0, S("[1/2,3/4)")}})));
  auto u = basic_nbhd(make_alex(2), {0, Q(1, 2)}, Q(1, 8));
  CHECK(ts_equal(u, T({{0, S("(3/8,5/8)")}, {1, S("(3/8,1/2) | (1/2,5/8)")}})));
  CHECK(ts_equal(basic_nbhd(make_discrete(), {0, Q(1, 2)}, Q(1, 9)), T({{0, S("{1/2}")}})));
  auto v = basic_nbhd(make_a7_const_inf(), {0, Q(5)}, Q(1, 2));
  CHECK(ts_equal(v, T({{0, S("(-inf,-2) | (9/2,11/2)")}})));
}

TEST_CASE("validate_topology on fixtures") {
  for (const char* n : {"euclidean", "discrete", "sorgenfrey", "upperlimit", "split", "nsplit(3)", "alex(2)",
                        "a7-const-inf", "a8-onepoint", "a8-hausdorff", "a9-nonregular"}) {
    CAPTURE(n);
    Space s = example(n);
    CHECK(validate_topology(s).empty());
    CHECK(oracle::basis_oracle(s));
  }
  Space bad = alex2_without_left();
  auto v = validate_topology(bad);
  REQUIRE_FALSE(v.empty());
  CHECK(v.front().anchor.side == Side::Left);
  CHECK(v.front().anchor.track == 0);
  CHECK_FALSE(oracle::basis_oracle(bad));
}

TEST_CASE("closure, interior, frontier") {
  CHECK(ts_equal(closure(make_euclidean(), T({{0, S("(0,1/2)")}})), T({{0, S("(0,1/2]")}})));
  CHECK(ts_equal(closure(make_sorgenfrey(), T({{0, S("(0,1/2)")}})), T({{0, S("(0,1/2)")}})));
  Space sp = make_split();
  TrackSet bottom = T({{0, S("[0,1]")}});
  CHECK(ts_equal(closure(sp, bottom), T({{0, S("[0,1]")}, {1, S("[0,1)")}})));
  CHECK_FALSE(is_open(sp, bottom));
  CHECK(ts_equal(frontier(sp, bottom), T({{1, S("[0,1)")}})));
  CHECK(is_open(make_sorgenfrey(), T({{0, S("[1/2,3/4)")}})));
  CHECK_FALSE(is_open(make_euclidean(), T({{0, S("[1/2,3/4)")}})));
  CHECK(ts_equal(interior(make_euclidean(), T({{0, S("[1/2,3/4)")}})), T({{0, S("(1/2,3/4)")}})));
  CHECK_THROWS_AS(closure(make_euclidean(), T({{0, S("(0,2)")}})), Error);
}

TEST_CASE("is_hausdorff") {
  CHECK(is_hausdorff(make_split()).ok);
  CHECK(is_hausdorff(make_euclidean()).ok);
  auto h = is_hausdorff(make_a7_const_inf());
  CHECK_FALSE(h.ok);
  CHECK(h.shared.value.is_neg_inf());
  CHECK_FALSE(h.x == h.y);
  auto a8 = is_hausdorff(make_a8_onepoint());
  CHECK_FALSE(a8.ok);
  // the witness pair shares the anchor
  CHECK(anchors(make_a8_onepoint(), a8.x).count(a8.shared));
  CHECK(anchors(make_a8_onepoint(), a8.y).count(a8.shared));
}

TEST_CASE("isolated points and separability") {
  CHECK(ts_equal(isolated_points(make_discrete()), T({{0, S("(0,1)")}})));
  CHECK_FALSE(is_definably_separable(make_discrete()));
  CHECK(ts_empty(isolated_points(make_sorgenfrey())));
  CHECK(is_definably_separable(make_sorgenfrey()));
  CHECK(ts_equal(isolated_points(make_alex(2)), T({{1, S("(0,1)")}})));
  CHECK(ts_equal(isolated_points(make_split()), T({{0, S("{0}")}, {1, S("{1}")}})));
}

TEST_CASE("n_of_point") {
  CHECK(n_of_point(make_euclidean(), {0, Q(1, 2)}) == 3);
  CHECK(n_of_point(make_split(), {0, Q(1, 2)}) == 3);
  CHECK(n_of_point(make_discrete(), {0, Q(1, 2)}) == 1);
}

TEST_CASE("push_forward") {
  Space r = push_forward(make_sorgenfrey(), {{0, AffineMap(Rat(-1), ExtRat(0))}});
  REQUIRE(r.flags.size() == 1);
  CHECK(r.flags[0].side == Side::Left);
  CHECK(r.tracks.at(0) == S("(-1,0)"));
  Space e = push_forward(make_euclidean(), {{0, AffineMap(Rat(2), ExtRat(0))}});
  CHECK(e.tracks.at(0) == S("(0,2)"));
  CHECK(e.flags.size() == 2);
  Space sw = push_forward(make_split(), {}, {{0, 1}, {1, 0}});
  CHECK(validate_topology(sw).empty());
  CHECK(is_hausdorff(sw).ok);
  CHECK_THROWS_AS(push_forward(make_split(), {}, {{0, 1}}), Error);
  CHECK_THROWS_AS(push_forward(make_split(), {{0, AffineMap::constant(ExtRat(1))}}), Error);
}

TEST_CASE("branch fixed points") {
  Space s;
  s.add_track(0, S("(0,2)"));
  s.add_flag(0, S("(0,2)"), Side::Right);
  s.add_flag(0, S("(0,2)"), Side::Left);
  Space raw = s;
  raw.add_branch(0, S("(1/2,2)"), AffineMap::parse("2*x-1"), 0, Side::Right);
  raw.canonicalize();
  CHECK_THROWS_WITH_AS(raw.check_well_formed(), doctest::Contains("(1/2,2)"), Error);
  s.add_branch_splitting(0, S("(1/2,2)"), AffineMap::parse("2*x-1"), 0, Side::Right);
  s.canonicalize();
  REQUIRE(s.branches.size() == 1);
  CHECK(s.branches[0].domain == S("(1/2,1) | (1,2)"));
}

TEST_CASE("T1 and neighbourhood monotonicity on fixtures") {
  for (const char* n : {"euclidean", "split", "alex(3)", "a7-const-inf", "a9-nonregular"}) {
    Space s = example(n);
    auto pts = oracle::sample_points(s, 2);
    for (const Point& x : pts) {
      CHECK(ts_subset(basic_nbhd(s, x, Q(1, 16)), basic_nbhd(s, x, Q(1, 8))));
      CHECK(is_open(s, basic_nbhd(s, x, Q(1, 8))));
      for (const Point& y : pts) {
        if (x == y) continue;
        bool excluded = false;
        for (int k = 1; k <= 40 && !excluded; ++k) excluded = !ts_contains(basic_nbhd(s, x, Q(1, 1L << k)), y);
        CHECK(excluded);
      }
    }
  }
}

TEST_CASE("closure operator laws on fixture subsets") {
  Space s = make_split();
  std::vector<TrackSet> ys = {T({{0, S("(0,1/2)")}}), T({{1, S("[1/4,3/4]")}}), T({{0, S("{1/2}")}, {1, S("(1/2,1]")}}),
                              T({{0, S("(1/3,1)")}, {1, S("(0,1/3)")}})};
  for (const auto& a : ys) {
    TrackSet ca = closure(s, a);
    CHECK(ts_subset(a, ca));
    CHECK(ts_equal(closure(s, ca), ca));
    for (const auto& b : ys) {
      CHECK(ts_equal(closure(s, ts_union(a, b)), ts_union(ca, closure(s, b))));
      if (ts_subset(a, b)) CHECK(ts_subset(ca, closure(s, b)));
    }
  }
}

TEST_CASE("space file round trip and diagnostics") {
  for (const auto& n : {"euclidean", "split", "nsplit(4)", "alex(3)", "a7-const-inf", "a8-onepoint"}) {
    Space s = example(n);
    std::string t = serialize(s);
    CHECK(serialize(parse_space_file(t)) == t);
  }
  std::string sorg = serialize(make_sorgenfrey());
  CHECK(sorg ==
        "[space]\nname = sorgenfrey\n\n[track]\nid = 0\ndomain = (0,1)\n\n[flag]\ntrack = 0\nregion = (0,1)\nside = "
        "right\n");
  std::string fixed =
      "[track]\nid = 0\ndomain = (0,2)\n[branch]\nfrom = 0\ncells = (1/2,2)\nmap = 2*x-1\nto = 0\nside = right\n";
  CHECK_THROWS_WITH_AS(parse_space_file(fixed), doctest::Contains("(1/2,2)"), Error);
  std::string outside = "[track]\nid = 0\ndomain = (0,1)\n[flag]\ntrack = 0\nregion = (0,1]\nside = right\n";
  try {
    parse_space_file(outside);
    FAIL("expected ValidationError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ValidationError);
  }
  try {
    parse_space_file("[track]\nid = 0\ndomain = (0,1\n");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ParseError);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
