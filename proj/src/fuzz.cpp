#include "omt/fuzz.hpp"

#include <algorithm>

namespace omt {

const char* family_name(FuzzFamily f) {
  switch (f) {
    case FuzzFamily::T3: return "t3";
    case FuzzFamily::Compact: return "compact";
    case FuzzFamily::NonRegular: return "nonregular";
    case FuzzFamily::NonHausdorff: return "nonhausdorff";
  }
  return "?";
}

namespace {

enum class BlockKind { Euclid, Alex, Lex, LexNoTop, LexNoBottom, Discrete, A9 };

// claims[j] lists (level i, side) germs claimed by points of level j, in base coordinates
struct BlockShape {
  int n = 1;
  std::vector<std::vector<std::pair<int, Side>>> claims;
};

BlockShape shape(BlockKind k, int m) {
  BlockShape b;
  switch (k) {
    case BlockKind::Euclid:
      b.n = 1;
      b.claims = {{{0, Side::Right}, {0, Side::Left}}};
      break;
    case BlockKind::Alex:
      b.n = m;
      b.claims.resize(m);
      for (int i = 0; i < m; ++i) {
        b.claims[0].push_back({i, Side::Right});
        b.claims[0].push_back({i, Side::Left});
      }
      break;
    case BlockKind::Lex:
      b.n = m + 1;
      b.claims.resize(m + 1);
      for (int i = 0; i <= m; ++i) {
        b.claims[0].push_back({i, Side::Left});
        b.claims[m].push_back({i, Side::Right});
      }
      break;
    case BlockKind::LexNoTop:
      b.n = m;
      b.claims.resize(m);
      for (int i = 0; i < m; ++i) b.claims[0].push_back({i, Side::Left});
      break;
    case BlockKind::LexNoBottom:
      b.n = m;
      b.claims.resize(m);
      for (int i = 0; i < m; ++i) b.claims[m - 1].push_back({i, Side::Right});
      break;
    case BlockKind::Discrete:
      b.n = 1;
      b.claims.resize(1);
      break;
    case BlockKind::A9:
      b.n = 2;
      b.claims = {{{1, Side::Right}}, {{1, Side::Left}}};
      break;
  }
  return b;
}

struct Placed {
  int track = 0;
  AffineMap phi;  // base (0, len) -> cell
  Cell cell;
};

struct Builder {
  std::mt19937_64& rng;
  Space s;
  int track = -1;
  Rat cursor{0};
  int points_track = -1;
  int n_points = 0;

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  bool coin(int num, int den) { return pick(1, den) <= num; }

  Placed place(const Rat& len) {
    if (track < 0 || coin(1, 2)) {
      track = s.next_track_id();
      s.add_track(track, DefSubset());
      cursor = Rat(pick(-2, 2));
    }
    static const Rat scales[] = {Rat(1), Rat(2), Rat(1, 2), Rat(3)};
    Rat a = scales[pick(0, 3)];
    Rat w = a * len;
    Placed p;
    p.track = track;
    if (coin(1, 2))
      p.phi = AffineMap(a, ExtRat(cursor));
    else
      p.phi = AffineMap(-a, ExtRat(cursor + w));
    p.cell = Cell::open(ExtRat(cursor), ExtRat(cursor + w));
    s.tracks[track] = s.tracks[track].unite(DefSubset::from_cell(p.cell));
    cursor += w + Rat(pick(1, 2), 2);
    return p;
  }

  Side oriented(const AffineMap& phi, Side side) { return phi.increasing() ? side : flip(side); }

  int new_point() {
    if (points_track < 0) {
      points_track = s.next_track_id();
      s.add_track(points_track, DefSubset());
    }
    int pos = n_points++;
    s.tracks[points_track] = s.tracks[points_track].unite(DefSubset::point(Rat(pos)));
    return pos;
  }

  // point claims the germ of every level at one end of the block
  void claim_end(int pos, const std::vector<Placed>& lv, const Rat& end, Side side) {
    for (const Placed& p : lv) {
      ExtRat v = p.phi.apply(end);
      s.add_branch(points_track, DefSubset::point(Rat(pos)), AffineMap::constant(v), p.track,
                   oriented(p.phi, side));
    }
  }

  std::vector<Placed> add_block(const BlockShape& b, const Rat& len) {
    std::vector<Placed> lv;
    for (int i = 0; i < b.n; ++i) lv.push_back(place(len));
    for (int j = 0; j < b.n; ++j) {
      DefSubset dom = DefSubset::from_cell(lv[j].cell);
      for (auto [i, side] : b.claims[j]) {
        Side t = oriented(lv[i].phi, side);
        if (i == j)
          s.add_flag(lv[j].track, dom, t);
        else
          s.add_branch(lv[j].track, dom, compose(lv[i].phi, lv[j].phi.inverse()), lv[i].track, t);
      }
    }
    return lv;
  }
};

BlockKind pick_kind(Builder& b, FuzzFamily f) {
  if (f == FuzzFamily::Compact) {
    static const BlockKind ks[] = {BlockKind::Euclid, BlockKind::Alex, BlockKind::Lex};
    return ks[b.pick(0, 2)];
  }
  static const BlockKind ks[] = {BlockKind::Euclid, BlockKind::Alex, BlockKind::Lex,
                                 BlockKind::LexNoTop, BlockKind::LexNoBottom, BlockKind::Discrete};
  return ks[b.pick(0, 5)];
}

}  // namespace

Space fuzz_space(std::mt19937_64& rng, FuzzFamily family) {
  Builder b{rng, {}};
  int nblocks = b.pick(1, 3);
  std::vector<BlockKind> kinds;
  for (int k = 0; k < nblocks; ++k) kinds.push_back(pick_kind(b, family));
  if (family == FuzzFamily::NonRegular) kinds[b.pick(0, nblocks - 1)] = BlockKind::A9;

  struct End {
    std::vector<Placed> lv;
    Rat at;
    Side side;
  };
  std::vector<End> ends;
  for (BlockKind k : kinds) {
    int m = k == BlockKind::Alex ? b.pick(1, 3) : b.pick(1, 2);
    static const Rat lens[] = {Rat(1), Rat(2), Rat(1, 2)};
    Rat len = lens[b.pick(0, 2)];
    auto lv = b.add_block(shape(k, m), len);
    ends.push_back({lv, Rat(0), Side::Right});
    ends.push_back({lv, len, Side::Left});
  }

  // endpoint claimers, sometimes shared between ends
  std::shuffle(ends.begin(), ends.end(), rng);
  std::vector<int> claimers;
  for (const End& e : ends) {
    if (family != FuzzFamily::Compact && b.coin(1, 2)) continue;
    int pos;
    if (!claimers.empty() && b.coin(1, 3))
      pos = claimers[b.pick(0, static_cast<int>(claimers.size()) - 1)];
    else
      claimers.push_back(pos = b.new_point());
    b.claim_end(pos, e.lv, e.at, e.side);
  }
  if (family == FuzzFamily::NonHausdorff) {
    const End& e = ends[b.pick(0, static_cast<int>(ends.size()) - 1)];
    b.claim_end(b.new_point(), e.lv, e.at, e.side);
    b.claim_end(b.new_point(), e.lv, e.at, e.side);
  }
  // a few isolated points
  for (int k = b.pick(0, 1); k > 0; --k) b.new_point();

  b.s.name = std::string("fuzz-") + family_name(family);
  b.s.canonicalize();
  b.s.check_well_formed();
  return b.s;
}

FuzzCase fuzz_mutant(const Space& s, std::mt19937_64& rng) {
  int nf = static_cast<int>(s.flags.size()), nb = static_cast<int>(s.branches.size());
  std::vector<int> order(nf + nb);
  for (int i = 0; i < nf + nb; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (int k : order) {
    Space t = s;
    if (k < nf)
      t.flags.erase(t.flags.begin() + k);
    else
      t.branches.erase(t.branches.begin() + (k - nf));
    if (!validate_topology(t).empty()) {
      t.name = s.name + "-mutant";
      return {t, FuzzFamily::T3, false};
    }
  }
  return {s, FuzzFamily::T3, true};
}

std::vector<FuzzCase> fuzz_generate(std::uint64_t seed, int count) {
  static const FuzzFamily fams[] = {FuzzFamily::T3, FuzzFamily::Compact, FuzzFamily::NonRegular,
                                    FuzzFamily::NonHausdorff};
  std::mt19937_64 rng(seed);
  std::vector<FuzzCase> out;
  for (int i = 0; i < count; ++i) {
    FuzzFamily f = fams[i % 4];
    out.push_back({fuzz_space(rng, f), f, true});
  }
  return out;
}

}  // namespace omt
