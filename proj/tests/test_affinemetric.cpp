#include <doctest.h>

#include "omt/affinemetric.hpp"
#include "omt/examples.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace omt;

namespace {

// tau-limits and metric limits agree on sampled curves
void check_topology(const Space& s, const MetricExpr& m, int curves, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Point> pts = oracle::sample_points(s);
  for (int i = 0; i < curves; ++i) {
    Curve g = random_curve(s, rng);
    TrackSet lim = tau_limit(s, g);
    std::vector<Point> cand = pts;
    if (!ts_empty(lim)) for (const Point& p : ts_points(lim)) cand.push_back(p);
    for (const Point& x : cand) {
      auto ml = oracle::metric_limit(m, g, x);
      if (!ml) continue;
      CHECK_MESSAGE((*ml == 0) == ts_contains(lim, x), s.name << " " << g.str() << " " << x.str());
    }
  }
}

}  // namespace

TEST_CASE("affineness") {
  AffineResult e = is_affine(make_euclidean());
  CHECK(e.affine);
  CHECK(e.graph.edges.size() == 1);
  CHECK(e.graph.vertices.size() == 1);
  AffineResult sp = is_affine(make_split());
  REQUIRE_FALSE(sp.affine);
  CHECK(sp.witness->label == PieceLabel::LeftHalfOpen);
  CHECK(sp.witness->track == 0);
  AffineResult a = is_affine(make_alex(2));
  REQUIRE_FALSE(a.affine);
  CHECK(a.witness->label == PieceLabel::Discrete);
  CHECK(a.witness->track == 1);
  CHECK(thrown_kind([] { is_affine(make_a7_const_inf()); }) == ErrorKind::NotHausdorff);
}

TEST_CASE("gluing graph of a closed interval with a point glued to both ends") {
  Space s;
  s.add_track(0, DefSubset::parse("[0,1]"));
  s.add_flag(0, DefSubset::parse("[0,1)"), Side::Right);
  s.add_flag(0, DefSubset::parse("(0,1]"), Side::Left);
  s.canonicalize();
  GluingGraph g = gluing_graph(s);
  CHECK(g.vertices.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].a == 0);
  CHECK(g.edges[0].b == 1);
  CHECK(*g.edges[0].length == 1);
}

TEST_CASE("metric with a spike") {
  Space s = example("a8-hausdorff");
  MetricExpr m = synthesize_metric(s);
  CHECK(eval_metric(m, {0, Q(1, 2)}, {0, Q(1, 3)}) == Q(5, 6));
  CHECK(eval_metric(m, {0, Q(1, 2)}, {0, Q(0)}) == Q(1, 2));
  CHECK(eval_metric(m, {0, Q(1, 2)}, {0, Q(1, 2)}) == 0);
  CHECK(thrown_kind([&] { eval_metric(m, {0, Q(2)}, {0, Q(0)}); }) == ErrorKind::PointOutsideDomain);
  CHECK(oracle::metric_axioms(m, oracle::sample_points(s, 6), 2000, 1));
  check_topology(s, m, 100, 5);
}

TEST_CASE("path metric and clopen pieces") {
  MetricExpr e = synthesize_metric(make_euclidean());
  CHECK(eval_metric(e, {0, Q(1, 4)}, {0, Q(3, 4)}) == Q(1, 2));
  check_topology(make_euclidean(), e, 100, 6);
  MetricExpr d = synthesize_metric(make_discrete());
  CHECK(eval_metric(d, {0, Q(1, 4)}, {0, Q(3, 4)}) == 1);
  check_topology(make_discrete(), d, 50, 7);

  Space mixed;
  mixed.add_track(0, DefSubset::parse("[0,1] | (2,3)"));
  mixed.add_flag(0, DefSubset::parse("[0,1)"), Side::Right);
  mixed.add_flag(0, DefSubset::parse("(0,1]"), Side::Left);
  mixed.add_track(1, DefSubset::parse("(0,1) | {2}"));
  mixed.add_branch(1, DefSubset::point(Q(2)), AffineMap::constant(ExtRat(1)), 1, Side::Left);
  mixed.canonicalize();
  REQUIRE(validate_topology(mixed).empty());
  MetricExpr mm = synthesize_metric(mixed);
  CHECK(mm.capped);
  CHECK(oracle::metric_axioms(mm, oracle::sample_points(mixed, 4), 5000, 2));
  check_topology(mixed, mm, 100, 8);
}

TEST_CASE("metric refusals") {
  CHECK(thrown_kind([] { synthesize_metric(make_sorgenfrey()); }) == ErrorKind::HalfOpenPiece);
  CHECK(thrown_kind([] { synthesize_metric(make_alex(2)); }) == ErrorKind::ExceptionalSetInfinite);
  CHECK(thrown_kind([] { synthesize_metric(make_a7_const_inf()); }) == ErrorKind::NotHausdorff);
  Space line;
  line.add_track(0, DefSubset::line());
  line.add_flag(0, DefSubset::line(), Side::Right);
  line.add_flag(0, DefSubset::line(), Side::Left);
  line.canonicalize();
  CHECK(thrown_kind([&] { synthesize_metric(line); }) == ErrorKind::Unbounded);
}

TEST_CASE("two-to-one maps") {
  TwoToOne sp = two_to_one_euclidean(make_split());
  CHECK(sp.max_fiber == 2);
  CHECK(continuity_check(make_split(), sp.target, sp.map).ok);
  CHECK(is_affine(sp.target).affine);
  TwoToOne e = two_to_one_euclidean(make_euclidean());
  CHECK(e.max_fiber == 1);
  CHECK(continuity_check(make_euclidean(), e.target, e.map).ok);
  CHECK(thrown_kind([] { two_to_one_euclidean(make_alex(2)); }) == ErrorKind::NotSeparable);
}
