#include <doctest.h>

#include "omt/construct.hpp"
#include "omt/examples.hpp"
#include "omt/io.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace omt;

namespace {

void check_compactification(const Space& s) {
  Compactification c = compactify(s);
  INFO(s.name);
  CHECK(validate_topology(c.space).empty());
  CHECK(is_definably_compact(c.space).ok);
  CHECK(is_hausdorff(c.space).ok);
  CHECK(is_regular(c.space).ok);
  CHECK(embedding_check(s, c.space, c.embedding).ok);
  CHECK(ts_equal(domain_set(c.embedding), s.all()));
  CHECK(c.added_points <= 1);
}

}  // namespace

TEST_CASE("open partition case tags") {
  OpenPartition d = open_partition(make_discrete());
  REQUIRE(d.pieces.size() == 1);
  CHECK(d.pieces[0].tag == CaseTag::Case0);
  CHECK(d.pieces[0].e_pattern == "empty");

  OpenPartition sp = open_partition(make_split());
  REQUIRE(sp.pieces.size() == 1);
  CHECK(sp.pieces[0].levels.size() == 2);
  CHECK(sp.pieces[0].tag == CaseTag::Case3);
  CHECK(sp.pieces[0].side_condition == "L\\R");
  CHECK(sp.singletons.size() == 4);

  OpenPartition a = open_partition(make_alex(2));
  REQUIRE(a.pieces.size() == 1);
  CHECK(a.pieces[0].tag == CaseTag::Case5);
  CHECK(a.pieces[0].levels.size() == 2);

  OpenPartition so = open_partition(make_sorgenfrey());
  REQUIRE(so.pieces.size() == 1);
  CHECK(so.pieces[0].tag == CaseTag::Case2);
  CHECK(open_partition(make_upper_limit()).pieces[0].tag == CaseTag::Case1);

  CHECK(thrown_kind([] { open_partition(make_a9_nonregular()); }) == ErrorKind::NotT3);
}

TEST_CASE("partition pieces are open and cover the space up to the singletons") {
  for (const char* name : {"euclidean", "discrete", "sorgenfrey", "split", "nsplit(4)", "alex(3)", "a8-hausdorff"}) {
    Space s = example(name);
    OpenPartition p = open_partition(s);
    TrackSet all;
    for (const auto& piece : p.pieces) {
      CHECK_MESSAGE(is_open(s, piece.points()), name);
      CHECK(ts_empty(ts_intersect(all, piece.points())));
      all = ts_union(all, piece.points());
    }
    for (const Point& x : p.singletons) all = ts_union(all, TrackSet{{x.track, DefSubset::point(x.pos)}});
    CHECK_MESSAGE(ts_equal(all, s.all()), name);
  }
}

TEST_CASE("similarity classes") {
  auto c = sim_class(make_split(), {0, Q(1, 2)});
  REQUIRE(c.size() == 2);
  CHECK(std::count(c.begin(), c.end(), Point{1, Q(1, 2)}) == 1);
  CHECK(sim_class(make_euclidean(), {0, Q(1, 3)}).size() == 1);
  CHECK(sim_class(make_alex(2), {1, Q(1, 3)}).size() == 2);
  SimClasses e = sim_classes(make_euclidean());
  CHECK(e.exceptional.empty());
  CHECK(ts_equal(e.core, make_euclidean().all()));
}

TEST_CASE("piece embeddings are certified") {
  for (const char* name : {"euclidean", "discrete", "sorgenfrey", "upperlimit", "split", "nsplit(3)", "alex(2)"}) {
    Space s = example(name);
    for (const auto& piece : open_partition(s).pieces) {
      PieceEmbedding e = embed_piece(piece);
      CHECK_MESSAGE(validate_topology(e.target).empty(), name);
      CHECK_MESSAGE(embedding_check(s, e.target, e.h).ok, name);
      if (e.bijective) CHECK(ts_equal(image_set(e.h), e.target.all()));
    }
  }
  PieceEmbedding sp = embed_piece(open_partition(make_split()).pieces[0]);
  CHECK(sp.bijective);
  CHECK(sp.kind == TargetKind::Lex);
  PieceEmbedding d = embed_piece(open_partition(make_discrete()).pieces[0]);
  CHECK(d.top == 2);
  CHECK(d.level[0] == 1);
}

TEST_CASE("decompose_T3 on the named spaces") {
  EmbeddingReport sp = decompose_T3(make_split());
  CHECK(sp.n_Y == 1);
  CHECK(ts_empty(sp.Z));
  CHECK(ts_finite(ts_minus(make_split().all(), sp.Y)));
  EmbeddingReport a = decompose_T3(make_alex(2));
  CHECK(a.n_Z == 1);
  CHECK(ts_empty(a.Y));
  EmbeddingReport so = decompose_T3(make_sorgenfrey());
  CHECK(so.n_Y == 1);
  CHECK(decompose_T3(make_discrete()).n_Y == 2);
  for (const char* name : {"split", "alex(3)", "sorgenfrey", "nsplit(3)", "discrete", "a8-hausdorff"}) {
    Space s = example(name);
    EmbeddingReport r = decompose_T3(s);
    if (!r.h_Y.empty()) CHECK_MESSAGE(embedding_check(s, r.lex, r.h_Y).ok, name);
    if (!r.h_Z.empty()) CHECK_MESSAGE(embedding_check(s, r.alex, r.h_Z).ok, name);
  }
}

TEST_CASE("two-level lex embedding of separable spaces") {
  LexEmbedding so = embed_separable_lex(make_sorgenfrey());
  CHECK(embedding_check(make_sorgenfrey(), so.target, so.h).ok);
  CHECK(so.target.tracks.size() == 2);
  LexEmbedding e = embed_separable_lex(make_euclidean());
  CHECK(embedding_check(make_euclidean(), e.target, e.h).ok);
  CHECK(thrown_kind([] { embed_separable_lex(make_alex(2)); }) == ErrorKind::NotSeparable);
}

TEST_CASE("one-point compactification") {
  Compactification e = one_point_compactify(make_euclidean());
  REQUIRE(e.added);
  auto an = anchors(e.space, *e.added);
  CHECK(an == std::set<Anchor>{{0, ExtRat(0), Side::Right}, {0, ExtRat(1), Side::Left}});
  CHECK(is_definably_compact(e.space).ok);
  CHECK(is_hausdorff(e.space).ok);
  Compactification sp = one_point_compactify(make_split());
  CHECK_FALSE(sp.added);
  CHECK(serialize(sp.space) == serialize(make_split()));
  CHECK(thrown_kind([] { one_point_compactify(make_sorgenfrey()); }) == ErrorKind::NotNearCompact);
}

TEST_CASE("compactify") {
  for (const char* name :
       {"euclidean", "discrete", "sorgenfrey", "upperlimit", "split", "nsplit(3)", "alex(2)", "a8-hausdorff"})
    check_compactification(example(name));
  CHECK(compactify(make_euclidean()).added_points == 1);
  CHECK(thrown_kind([] { compactify(make_a9_nonregular()); }) == ErrorKind::NotT3);
}

TEST_CASE("separating closed sets") {
  Space e = make_euclidean();
  TrackSet b = closure(e, {{0, DefSubset::parse("(0,1/4)")}});
  TrackSet c = closure(e, {{0, DefSubset::parse("(1/2,3/4)")}});
  Separation s1 = separate_closed_sets(e, b, c);
  CHECK(ts_subset(b, s1.U));
  CHECK(ts_subset(c, s1.V));
  CHECK(ts_empty(ts_intersect(s1.U, s1.V)));
  CHECK(is_open(e, s1.U));
  CHECK(is_open(e, s1.V));

  Space sp = make_split();
  Separation s2 = separate_closed_sets(sp, {{0, DefSubset::point(Q(1, 2))}}, {{1, DefSubset::point(Q(1, 2))}});
  CHECK(is_open(sp, s2.U));
  CHECK(is_open(sp, s2.V));
  CHECK(ts_empty(ts_intersect(s2.U, s2.V)));

  TrackSet half{{0, DefSubset::point(Q(1, 2))}};
  CHECK(thrown_kind([&] { separate_closed_sets(e, half, half); }) == ErrorKind::NotDisjoint);
  CHECK(thrown_kind([&] { separate_closed_sets(e, {{0, DefSubset::parse("(0,1/4)")}}, c); }) ==
        ErrorKind::NotClosed);
}
