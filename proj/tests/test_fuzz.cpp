#include <doctest.h>

#include "omt/classify.hpp"
#include "omt/construct.hpp"
#include "omt/fuzz.hpp"
#include "omt/io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace omt;

TEST_CASE("fuzz spaces validate and match their family") {
  for (const FuzzCase& c : fuzz_generate(7, 60)) {
    INFO(serialize(c.space));
    REQUIRE(validate_topology(c.space).empty());
    CHECK(c.space.bounded());
    bool h = is_hausdorff(c.space).ok;
    switch (c.family) {
      case FuzzFamily::T3:
        CHECK(h);
        CHECK(is_regular(c.space).ok);
        break;
      case FuzzFamily::Compact:
        CHECK(h);
        CHECK(is_definably_compact(c.space).ok);
        break;
      case FuzzFamily::NonRegular:
        CHECK(h);
        CHECK_FALSE(is_regular(c.space).ok);
        break;
      case FuzzFamily::NonHausdorff:
        CHECK_FALSE(h);
        break;
    }
  }
}

TEST_CASE("fuzz spaces pass the neighbourhood sampling oracle") {
  for (const FuzzCase& c : fuzz_generate(11, 24)) {
    INFO(serialize(c.space));
    CHECK(oracle::basis_oracle(c.space));
  }
}

TEST_CASE("fuzz generation is deterministic") {
  auto a = fuzz_generate(1, 8), b = fuzz_generate(1, 8);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) CHECK(serialize(a[i].space) == serialize(b[i].space));
  auto c = fuzz_generate(2, 8);
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i) differs |= serialize(a[i].space) != serialize(c[i].space);
  CHECK(differs);
}

TEST_CASE("mutants fail validation") {
  std::mt19937_64 rng(5);
  int mutated = 0;
  for (const FuzzCase& c : fuzz_generate(3, 40)) {
    FuzzCase m = fuzz_mutant(c.space, rng);
    if (m.valid) continue;
    ++mutated;
    CHECK_FALSE(validate_topology(m.space).empty());
    CHECK_FALSE(oracle::basis_oracle(m.space));
    CHECK(m.space.flags.size() + m.space.branches.size() + 1 ==
          c.space.flags.size() + c.space.branches.size());
  }
  CHECK(mutated >= 20);
}

TEST_CASE("closure is a closure operator on fuzzed subsets") {
  std::mt19937_64 rng(9);
  for (const FuzzCase& c : fuzz_generate(13, 16)) {
    const Space& s = c.space;
    auto pts = oracle::sample_points(s, 2);
    auto random_set = [&]() {
      TrackSet y;
      for (auto& [t, d] : s.tracks)
        for (const Cell& cl : cells(d))
          if (rng() % 3 == 0) y[t] = y[t].unite(DefSubset::from_cell(cl));
      for (const Point& p : pts)
        if (rng() % 5 == 0) y[p.track] = y[p.track].unite(DefSubset::point(p.pos));
      return y;
    };
    for (int k = 0; k < 4; ++k) {
      TrackSet a = random_set(), b = random_set();
      TrackSet ca = closure(s, a), cb = closure(s, b);
      CHECK(ts_subset(a, ca));
      CHECK(ts_equal(closure(s, ca), ca));
      CHECK(ts_equal(closure(s, ts_union(a, b)), ts_union(ca, cb)));
      if (ts_subset(a, ts_union(a, b))) CHECK(ts_subset(ca, closure(s, ts_union(a, b))));
    }
  }
}

TEST_CASE("hausdorff sharing bound on fuzzed spaces") {
  for (const FuzzCase& c : fuzz_generate(17, 40)) {
    if (!is_hausdorff(c.space).ok) continue;
    std::map<Anchor, int> count;
    std::map<std::pair<int, ExtRat>, int> vcount;
    for (const Point& p : oracle::sample_points(c.space, 2)) {
      std::set<std::pair<int, ExtRat>> vals;
      for (const Anchor& a : anchors(c.space, p)) {
        ++count[a];
        vals.insert({a.track, a.value});
      }
      for (const auto& v : vals) ++vcount[v];
    }
    for (auto& [a, n] : count) CHECK(n <= 1);
    for (auto& [v, n] : vcount) CHECK(n <= 2);
  }
}

TEST_CASE("open partition covers fuzzed T3 spaces") {
  for (const FuzzCase& c : fuzz_generate(19, 40)) {
    if (c.family != FuzzFamily::T3 && c.family != FuzzFamily::Compact) continue;
    OpenPartition p = open_partition(c.space);
    TrackSet u;
    for (const Point& x : p.singletons) u[x.track] = u[x.track].unite(DefSubset::point(x.pos));
    for (const OpenPiece& piece : p.pieces) {
      CHECK(is_open(c.space, piece.points()));
      CHECK(ts_empty(ts_intersect(u, piece.points())));
      u = ts_union(u, piece.points());
    }
    CHECK(ts_equal(u, c.space.all()));
  }
}
