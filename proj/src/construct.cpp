#include "omt/construct.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>

namespace omt {

namespace {

void require_t3(const Space& s) {
  if (!is_hausdorff(s).ok) throw Error(ErrorKind::NotT3, "space is not Hausdorff");
  RegularResult r = is_regular(s);
  if (!r.ok) throw Error(ErrorKind::NotT3, "regularity fails at " + r.witness.str() + ": missing " + r.missing.str());
}

AffineMap translate(const Rat& d) { return AffineMap(Rat(1), ExtRat(d)); }

struct Claim {
  int level;
  Side side;
  friend bool operator<(const Claim& a, const Claim& b) {
    return a.level != b.level ? a.level < b.level : a.side < b.side;
  }
};

Side to_base(Side s, const AffineMap& f) { return f.increasing() ? s : flip(s); }

OpenPartition partition_of(const Space& s, const T3View& tv) {
  OpenPartition out;
  const CellView& v = tv.view;
  for (const auto& rc : v.cells)
    if (rc.cell.point) out.singletons.push_back({rc.track, rc.cell.lo.value()});
  for (const auto& block : tv.blocks) {
    std::map<int, int> pos;  // view index -> block position
    for (size_t k = 0; k < block.size(); ++k) pos[block[k].cell] = static_cast<int>(k);
    size_t n = block.size();
    std::vector<std::set<Claim>> claims(n);
    for (size_t j = 0; j < n; ++j) {
      const RefCell& rc = v.cells[block[j].cell];
      for (const auto& g : rc.gens) {
        if (g.self) {
          claims[j].insert({static_cast<int>(j), to_base(g.side, block[j].from_base)});
          continue;
        }
        if (g.map.is_constant()) continue;
        int t = image_cell(s, v, rc, g);
        if (t < 0) continue;
        int i = pos.at(t);
        claims[j].insert({i, to_base(g.side, block[i].from_base)});
      }
    }
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (size_t j = 0; j < n; ++j)
      for (const auto& c : claims[j]) parent[find(c.level)] = find(static_cast<int>(j));
    std::map<int, std::vector<int>> comps;
    for (size_t j = 0; j < n; ++j) comps[find(static_cast<int>(j))].push_back(static_cast<int>(j));

    for (const auto& [root, members] : comps) {
      std::vector<int> lact, ract;
      for (int j : members) {
        bool l = false, r = false;
        for (const auto& c : claims[j]) (c.side == Side::Left ? l : r) = true;
        if (l) lact.push_back(j);
        if (r) ract.push_back(j);
      }
      auto claims_all = [&](int j, Side side) {
        for (int i : members)
          if (!claims[j].count({i, side})) return false;
        return true;
      };
      if (lact.size() > 1 || ract.size() > 1 || (!lact.empty() && !claims_all(lact[0], Side::Left)) ||
          (!ract.empty() && !claims_all(ract[0], Side::Right)))
        throw Error(ErrorKind::Internal, "unexpected accumulation pattern on " + v.cells[block[members[0]].cell].cell.str());

      int b = members[0];
      if (!lact.empty()) b = lact[0];
      if (!ract.empty() && (lact.empty() || ract[0] < b)) b = ract[0];
      AffineMap rebase = block[b].from_base.inverse();
      bool flipped = block[b].from_base.decreasing();
      int la = lact.empty() ? -1 : lact[0], ra = ract.empty() ? -1 : ract[0];
      if (flipped) std::swap(la, ra);

      OpenPiece p;
      std::vector<int> order{b};
      for (int j : members)
        if (j != b && j != la && j != ra) order.push_back(j);
      int other = la == b ? ra : la;
      if (other >= 0 && other != b) order.push_back(other);
      for (int j : order) {
        const RefCell& rc = v.cells[block[j].cell];
        p.levels.push_back({rc.track, rc.cell, compose(block[j].from_base, rebase)});
      }
      if (la < 0 && ra < 0) {
        p.tag = CaseTag::Case0;
        p.e_pattern = "empty";
        p.side_condition = "none";
      } else if (la == ra) {
        p.tag = CaseTag::Case5;
        p.e_pattern = "{x}";
        p.side_condition = "R&L";
      } else if (ra < 0) {
        p.tag = CaseTag::Case1;
        p.e_pattern = "{x}";
        p.side_condition = "L\\R";
      } else if (la < 0) {
        p.tag = CaseTag::Case2;
        p.e_pattern = "{x}";
        p.side_condition = "R\\L";
      } else if (la == b) {
        p.tag = CaseTag::Case3;
        p.e_pattern = "{x,f(x)}";
        p.side_condition = "L\\R";
      } else {
        p.tag = CaseTag::Case4;
        p.e_pattern = "{x,f(x)}";
        p.side_condition = "R\\L";
      }
      out.pieces.push_back(std::move(p));
    }
  }
  return out;
}

void add_lex(Space& x, int first, const DefSubset& dom, int m, const std::vector<int>& used) {
  for (int k : used) {
    if (!x.tracks.count(first + k)) x.add_track(first + k, dom);
    else x.tracks[first + k] = x.tracks[first + k].unite(dom);
  }
  int top = used.back();
  if (m == 0) {
    x.add_flag(first, dom, Side::Right);
    x.add_flag(first, dom, Side::Left);
    return;
  }
  x.add_flag(first, dom, Side::Left);
  x.add_flag(first + top, dom, Side::Right);
  for (int k : used) {
    if (k != 0) x.add_branch(first, dom, AffineMap::identity(), first + k, Side::Left);
    if (k != top) x.add_branch(first + top, dom, AffineMap::identity(), first + k, Side::Right);
  }
}

void add_alex(Space& x, int first, const DefSubset& dom, int n) {
  for (int k = 0; k < n; ++k) {
    if (!x.tracks.count(first + k)) x.add_track(first + k, dom);
    else x.tracks[first + k] = x.tracks[first + k].unite(dom);
  }
  x.add_flag(first, dom, Side::Right);
  x.add_flag(first, dom, Side::Left);
  for (int k = 1; k < n; ++k) {
    x.add_branch(first, dom, AffineMap::identity(), first + k, Side::Right);
    x.add_branch(first, dom, AffineMap::identity(), first + k, Side::Left);
  }
}

std::vector<int> iota_levels(int m) {
  std::vector<int> v(m + 1);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// translations putting the cells side by side, in order, with gaps
std::vector<AffineMap> place(const std::vector<Cell>& cs) {
  std::vector<AffineMap> out(cs.size(), AffineMap::identity());
  int left = -1, right = -1;
  for (size_t i = 0; i < cs.size(); ++i) {
    bool l = cs[i].lo.is_neg_inf(), r = cs[i].hi.is_pos_inf();
    if (l && r) {
      if (cs.size() > 1) throw Error(ErrorKind::Unbounded, "a piece covers the whole line next to other pieces");
      return out;
    }
    if (l) {
      if (left >= 0) throw Error(ErrorKind::Unbounded, "two pieces are unbounded below");
      left = static_cast<int>(i);
    }
    if (r) {
      if (right >= 0) throw Error(ErrorKind::Unbounded, "two pieces are unbounded above");
      right = static_cast<int>(i);
    }
  }
  Rat cursor = 0;
  if (left >= 0) {
    out[left] = translate(-cs[left].hi.value());
    cursor = 1;
  }
  for (size_t i = 0; i < cs.size(); ++i) {
    if (static_cast<int>(i) == left || static_cast<int>(i) == right) continue;
    out[i] = translate(cursor - cs[i].lo.value());
    cursor += cs[i].hi.value() - cs[i].lo.value() + 1;
  }
  if (right >= 0) out[right] = translate(cursor - cs[right].lo.value());
  return out;
}

struct Assembled {
  Space space;
  PiecewiseMap h;
  int top = 0;
};

// pieces with their target top level; top 0 means a single euclidean level
Assembled assemble(const std::vector<const OpenPiece*>& ps, const std::vector<PieceEmbedding>& es, bool lex) {
  Assembled out;
  std::vector<Cell> bases;
  for (const auto* p : ps) bases.push_back(p->base());
  std::vector<AffineMap> shift = place(bases);
  for (const auto& e : es) out.top = std::max(out.top, e.top);
  for (size_t k = 0; k < ps.size(); ++k) {
    const PieceEmbedding& e = es[k];
    DefSubset dom = DefSubset::from_cell(bases[k]).image(shift[k]);
    auto lv = [&](int l) { return lex && l == e.top && e.top > 0 ? out.top : l; };
    if (lex) {
      std::vector<int> used;
      for (int l = 0; l <= e.top; ++l) used.push_back(lv(l));
      add_lex(out.space, 0, dom, e.top, used);
    } else {
      add_alex(out.space, 0, dom, e.top + 1);
    }
    for (size_t i = 0; i < ps[k]->levels.size(); ++i) {
      const Level& L = ps[k]->levels[i];
      out.h.push_back({L.track, L.cell, compose(shift[k], L.from_base.inverse()), lv(e.level[i])});
    }
  }
  out.space.name = lex ? "lex" : "alexandrov";
  out.space.canonicalize();
  out.space.check_well_formed();
  return out;
}

int isolated_outside(const Space& x, const PiecewiseMap& h) {
  TrackSet rest = ts_minus(x.all(), image_set(h));
  int count = 0;
  for (const auto& [t, d] : rest)
    for (const Cell& c : cells(d))
      if (c.point) ++count;
  return count;
}

}  // namespace

int find_cell(const CellView& v, int track, const Cell& c) {
  for (size_t i = 0; i < v.cells.size(); ++i)
    if (v.cells[i].track == track && v.cells[i].cell == c) return static_cast<int>(i);
  return -1;
}

// interval cell whose end carries the germ, or -1 when the germ is empty
int germ_cell(const CellView& v, const Anchor& a) {
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const RefCell& rc = v.cells[i];
    if (rc.track != a.track || rc.cell.point) continue;
    bool hit;
    if (a.value.is_neg_inf())
      hit = rc.cell.lo.is_neg_inf();
    else if (a.value.is_pos_inf())
      hit = rc.cell.hi.is_pos_inf();
    else
      hit = a.side == Side::Right ? rc.cell.lo == a.value : rc.cell.hi == a.value;
    if (hit) return static_cast<int>(i);
  }
  return -1;
}

// target cell of a non-constant generator on an interval cell; -1 if the image misses the domain
int image_cell(const Space& s, const CellView& v, const RefCell& rc, const Gen& g) {
  Cell im = Cell::open(g.map.increasing() ? g.map.apply_ext(rc.cell.lo) : g.map.apply_ext(rc.cell.hi),
                       g.map.increasing() ? g.map.apply_ext(rc.cell.hi) : g.map.apply_ext(rc.cell.lo));
  int j = find_cell(v, g.to, im);
  if (j >= 0) return j;
  if (!s.domain(g.to).contains(im.sample())) return -1;
  throw Error(ErrorKind::Internal, "image of " + rc.cell.str() + " under " + g.map.str() + " is not a cell");
}

T3View t3_refine(const Space& s, std::map<int, std::vector<Rat>> extra) {
  std::map<int, std::set<Rat>> cuts;
  for (const auto& rc : refine_canonical(s).cells) {
    if (rc.cell.lo.finite()) cuts[rc.track].insert(rc.cell.lo.value());
    if (rc.cell.hi.finite()) cuts[rc.track].insert(rc.cell.hi.value());
  }
  for (const auto& [t, xs] : extra) cuts[t].insert(xs.begin(), xs.end());
  auto as_extra = [&] {
    std::map<int, std::vector<Rat>> e;
    for (const auto& [t, xs] : cuts) e[t].assign(xs.begin(), xs.end());
    return e;
  };
  T3View tv;
  for (int round = 0;; ++round) {
    if (round == 512) throw Error(ErrorKind::Internal, "refinement did not stabilise");
    CellView v = build_view(s, as_extra());
    std::map<int, std::vector<Rat>> bps;
    for (const auto& rc : v.cells) {
      if (rc.cell.lo.finite()) bps[rc.track].push_back(rc.cell.lo.value());
      if (rc.cell.hi.finite()) bps[rc.track].push_back(rc.cell.hi.value());
    }
    bool changed = false;
    auto add = [&](int t, const ExtRat& x) {
      if (x.finite() && s.tracks.count(t) && cuts[t].insert(x.value()).second) changed = true;
    };
    for (const auto& rc : v.cells)
      for (const auto& g : rc.gens) {
        if (g.self) continue;
        if (g.map.is_constant()) {
          add(g.to, g.map.beta);
          continue;
        }
        if (rc.cell.point) {
          add(g.to, g.map.apply(rc.cell.lo.value()));
          continue;
        }
        add(g.to, g.map.apply_ext(rc.cell.lo));
        add(g.to, g.map.apply_ext(rc.cell.hi));
        AffineMap inv = g.map.inverse();
        for (const Rat& b : bps[g.to]) {
          ExtRat x = inv.apply(b);
          if (rc.cell.contains(x.value())) add(rc.track, x);
        }
      }
    if (!changed) {
      tv.view = std::move(v);
      break;
    }
  }

  const CellView& v = tv.view;
  size_t n = v.cells.size();
  struct Edge {
    int to;
    AffineMap map;
  };
  std::vector<std::vector<Edge>> adj(n);
  for (size_t i = 0; i < n; ++i) {
    const RefCell& rc = v.cells[i];
    if (rc.cell.point) continue;
    for (const auto& g : rc.gens) {
      if (g.self || g.map.is_constant()) continue;
      int j = image_cell(s, v, rc, g);
      if (j < 0) continue;
      adj[i].push_back({j, g.map});
      adj[j].push_back({static_cast<int>(i), g.map.inverse()});
    }
  }
  tv.block_of.assign(n, -1);
  std::vector<std::optional<AffineMap>> f(n);
  for (size_t i = 0; i < n; ++i) {
    if (v.cells[i].cell.point || tv.block_of[i] >= 0) continue;
    int id = static_cast<int>(tv.blocks.size());
    tv.blocks.emplace_back();
    std::deque<int> q{static_cast<int>(i)};
    f[i] = AffineMap::identity();
    tv.block_of[i] = id;
    while (!q.empty()) {
      int c = q.front();
      q.pop_front();
      tv.blocks[id].push_back({c, *f[c]});
      for (const Edge& e : adj[c]) {
        AffineMap m = compose(e.map, *f[c]);
        if (f[e.to]) {
          if (!(*f[e.to] == m))
            throw Error(ErrorKind::Internal, "generators around " + v.cells[e.to].cell.str() + " do not commute");
          continue;
        }
        f[e.to] = m;
        tv.block_of[e.to] = id;
        q.push_back(e.to);
      }
    }
  }
  return tv;
}

std::vector<Point> SimFamily::members(const Rat& x) const {
  std::vector<Point> out;
  for (const auto& l : levels) out.push_back({l.track, l.from_base.apply(x).value()});
  return out;
}

TrackSet OpenPiece::points() const {
  TrackSet out;
  for (const auto& l : levels) out = ts_union(out, TrackSet{{l.track, DefSubset::from_cell(l.cell)}});
  return out;
}

const char* case_name(CaseTag c) {
  static const char* names[] = {"Case0", "Case1", "Case2", "Case3", "Case4", "Case5"};
  return names[static_cast<int>(c)];
}

const char* target_name(TargetKind k) { return k == TargetKind::Lex ? "lex" : "alexandrov"; }

OpenPartition open_partition(const Space& s) {
  require_t3(s);
  return partition_of(s, t3_refine(s));
}

SimClasses sim_classes(const Space& s) {
  OpenPartition p = open_partition(s);
  SimClasses out;
  out.exceptional = p.singletons;
  for (const auto& piece : p.pieces) {
    out.families.push_back({piece.levels});
    out.core = ts_union(out.core, piece.points());
  }
  return out;
}

std::vector<Point> sim_class(const Space& s, const Point& x) {
  if (!s.contains(x)) throw Error(ErrorKind::PointOutsideDomain, x.str());
  for (const auto& f : sim_classes(s).families)
    for (const auto& l : f.levels)
      if (l.track == x.track && l.cell.contains(x.pos)) return f.members(l.from_base.inverse().apply(x.pos).value());
  return {x};
}

Space lex_space(const Cell& base, int m) {
  Space x;
  add_lex(x, 0, DefSubset::from_cell(base), m, iota_levels(m));
  x.name = "lex";
  x.canonicalize();
  x.check_well_formed();
  return x;
}

Space alexandrov_space(const Cell& base, int n) {
  Space x;
  add_alex(x, 0, DefSubset::from_cell(base), n);
  x.name = "alexandrov";
  x.canonicalize();
  x.check_well_formed();
  return x;
}

PieceEmbedding embed_piece(const OpenPiece& piece) {
  PieceEmbedding e;
  int n = static_cast<int>(piece.levels.size());
  e.level.resize(n);
  switch (piece.tag) {
    case CaseTag::Case0:
      if (n != 1) throw Error(ErrorKind::UnknownCase, "Case0 piece with several levels");
      e.top = 2;
      e.level[0] = 1;
      break;
    case CaseTag::Case1:
      e.top = n;
      for (int i = 0; i < n; ++i) e.level[i] = i;
      break;
    case CaseTag::Case2:
      e.top = n;
      for (int i = 0; i < n; ++i) e.level[i] = n - i;
      break;
    case CaseTag::Case3:
      e.top = n - 1;
      for (int i = 0; i < n; ++i) e.level[i] = i;
      e.bijective = true;
      break;
    case CaseTag::Case4:
      e.top = n - 1;
      for (int i = 0; i < n; ++i) e.level[i] = n - 1 - i;
      e.bijective = true;
      break;
    case CaseTag::Case5:
      e.kind = TargetKind::Alexandrov;
      e.top = n - 1;
      for (int i = 0; i < n; ++i) e.level[i] = i;
      e.bijective = true;
      break;
  }
  e.target = e.kind == TargetKind::Lex ? lex_space(piece.base(), e.top) : alexandrov_space(piece.base(), n);
  for (int i = 0; i < n; ++i) {
    const Level& L = piece.levels[i];
    e.h.push_back({L.track, L.cell, L.from_base.inverse(), e.level[i]});
  }
  return e;
}

EmbeddingReport decompose_T3(const Space& s) {
  require_t3(s);
  OpenPartition p = partition_of(s, t3_refine(s));
  EmbeddingReport r;
  r.leftover = p.singletons;
  r.pieces = p.pieces;
  std::vector<const OpenPiece*> lp, ap;
  std::vector<PieceEmbedding> le, ae;
  for (const auto& piece : r.pieces) {
    PieceEmbedding e = embed_piece(piece);
    r.embeddings.push_back(e);
    if (e.kind == TargetKind::Lex) {
      r.Y = ts_union(r.Y, piece.points());
      lp.push_back(&piece);
      le.push_back(e);
    } else {
      r.Z = ts_union(r.Z, piece.points());
      ap.push_back(&piece);
      ae.push_back(e);
    }
  }
  if (!lp.empty()) {
    Assembled a = assemble(lp, le, true);
    r.lex = std::move(a.space);
    r.h_Y = std::move(a.h);
    r.n_Y = a.top;
  }
  if (!ap.empty()) {
    Assembled a = assemble(ap, ae, false);
    r.alex = std::move(a.space);
    r.h_Z = std::move(a.h);
    r.n_Z = a.top;
  }
  return r;
}

LexEmbedding embed_separable_lex(const Space& s) {
  require_t3(s);
  if (!is_definably_separable(s)) throw Error(ErrorKind::NotSeparable, "infinitely many isolated points");
  OpenPartition p = partition_of(s, t3_refine(s));
  LexEmbedding out;
  out.leftover = p.singletons;
  std::vector<const OpenPiece*> ps;
  std::vector<PieceEmbedding> es;
  for (const auto& piece : p.pieces) {
    PieceEmbedding e = embed_piece(piece);
    if (e.kind == TargetKind::Alexandrov) {
      if (piece.levels.size() != 1) throw Error(ErrorKind::Internal, "multi-level Alexandrov piece in a separable space");
      e.kind = TargetKind::Lex;
      e.target = lex_space(piece.base(), 0);
    }
    if (e.top > 1) throw Error(ErrorKind::Internal, "piece needs more than two levels in a separable space");
    out.Y = ts_union(out.Y, piece.points());
    ps.push_back(&piece);
    es.push_back(std::move(e));
  }
  if (!ps.empty()) {
    Assembled a = assemble(ps, es, true);
    out.target = std::move(a.space);
    out.h = std::move(a.h);
  }
  return out;
}

PiecewiseMap identity_map(const Space& s) {
  PiecewiseMap h;
  for (const auto& [t, d] : s.tracks)
    for (const Cell& c : cells(d)) h.push_back({t, c, c.point ? AffineMap::constant(c.lo) : AffineMap::identity(), t});
  return h;
}

Compactification one_point_compactify(const Space& s) {
  require_t3(s);
  if (!is_near_compact(s)) throw Error(ErrorKind::NotNearCompact, "infinitely many divergent curve classes");
  Compactification out;
  out.space = s;
  out.embedding = identity_map(s);
  auto unc = uncovered_germs(s);
  if (unc.empty()) return out;
  int c = s.next_track_id();
  DefSubset at = DefSubset::point(Rat(0));
  out.space.add_track(c, at);
  for (const auto& u : unc) {
    for (const Rat& v : u.values.finite.points())
      out.space.add_branch(c, at, AffineMap::constant(ExtRat(v)), u.track, u.side);
    if (u.values.neg_inf) out.space.add_branch(c, at, AffineMap::constant(ExtRat::neg_inf()), u.track, u.side);
    if (u.values.pos_inf) out.space.add_branch(c, at, AffineMap::constant(ExtRat::pos_inf()), u.track, u.side);
  }
  out.space.canonicalize();
  out.space.check_well_formed();
  out.added = Point{c, Rat(0)};
  out.added_points = 1;
  return out;
}

Compactification compactify(const Space& s) {
  require_t3(s);
  T3View tv = t3_refine(s);
  OpenPartition p = partition_of(s, tv);
  Space x;
  x.name = s.name;
  PiecewiseMap h;
  struct Where {
    int piece, level;
  };
  std::map<int, Where> where;  // view index -> piece level
  std::vector<int> first, top;
  int next = 0;
  for (size_t k = 0; k < p.pieces.size(); ++k) {
    const OpenPiece& piece = p.pieces[k];
    PieceEmbedding e = embed_piece(piece);
    DefSubset dom = DefSubset::from_cell(piece.base());
    if (e.kind == TargetKind::Lex)
      add_lex(x, next, dom, e.top, iota_levels(e.top));
    else
      add_alex(x, next, dom, e.top + 1);
    for (size_t i = 0; i < piece.levels.size(); ++i) {
      const Level& L = piece.levels[i];
      where[find_cell(tv.view, L.track, L.cell)] = {static_cast<int>(k), static_cast<int>(i)};
      h.push_back({L.track, L.cell, L.from_base.inverse(), next + e.level[i]});
    }
    first.push_back(next);
    top.push_back(e.top);
    next += e.top + 1;
  }
  for (const Point& q : p.singletons) {
    int id = next++;
    DefSubset at = DefSubset::point(q.pos);
    x.add_track(id, at);
    h.push_back({q.track, Cell::at(q.pos), AffineMap::constant(ExtRat(q.pos)), id});
    for (const Anchor& a : anchors(s, q)) {
      int gc = germ_cell(tv.view, a);
      if (gc < 0) continue;
      auto it = where.find(gc);
      if (it == where.end()) throw Error(ErrorKind::Internal, "germ " + a.str() + " outside every piece");
      const Level& L = p.pieces[it->second.piece].levels[it->second.level];
      ExtRat v = L.from_base.inverse().apply_ext(a.value);
      Side side = to_base(a.side, L.from_base);
      for (int k = 0; k <= top[it->second.piece]; ++k)
        x.add_branch(id, at, AffineMap::constant(v), first[it->second.piece] + k, side);
    }
  }
  x.canonicalize();
  x.check_well_formed();
  Compactification out = one_point_compactify(x);
  out.embedding = h;
  out.added_points = isolated_outside(out.space, h);
  return out;
}

Separation separate_closed_sets(const Space& s, const TrackSet& B, const TrackSet& C) {
  require_t3(s);
  if (!ts_subset(B, s.all()) || !ts_subset(C, s.all()))
    throw Error(ErrorKind::SubsetOutsideDomain, "separated sets must lie in the space");
  if (!is_closed(s, B)) throw Error(ErrorKind::NotClosed, "first set is not closed");
  if (!is_closed(s, C)) throw Error(ErrorKind::NotClosed, "second set is not closed");
  if (!ts_empty(ts_intersect(B, C))) throw Error(ErrorKind::NotDisjoint, "the sets meet");

  std::map<int, std::vector<Rat>> extra;
  for (const TrackSet* y : {&B, &C})
    for (const auto& [t, d] : *y)
      for (const Rat& e : d.endpoints()) extra[t].push_back(e);
  T3View tv = t3_refine(s, extra);
  // one cut per block so that the two ends of every cell fall in different cells
  for (const auto& block : tv.blocks) {
    Rat m = tv.view.cells[block[0].cell].cell.sample();
    for (const auto& bc : block)
      extra[tv.view.cells[bc.cell].track].push_back(bc.from_base.apply(m).value());
  }
  tv = t3_refine(s, extra);
  const CellView& v = tv.view;

  auto grow = [&](const TrackSet& seed) {
    std::vector<bool> in(v.cells.size(), false);
    std::deque<int> q;
    for (size_t i = 0; i < v.cells.size(); ++i) {
      const RefCell& rc = v.cells[i];
      auto it = seed.find(rc.track);
      if (it != seed.end() && it->second.contains_cell(rc.cell)) {
        in[i] = true;
        q.push_back(static_cast<int>(i));
      }
    }
    while (!q.empty()) {
      int i = q.front();
      q.pop_front();
      const RefCell& rc = v.cells[i];
      std::vector<int> next;
      if (rc.cell.point) {
        for (const Anchor& a : anchors(s, {rc.track, rc.cell.lo.value()})) next.push_back(germ_cell(v, a));
      } else {
        for (const auto& g : rc.gens)
          if (!g.self && !g.map.is_constant()) next.push_back(image_cell(s, v, rc, g));
      }
      for (int j : next)
        if (j >= 0 && !in[j]) {
          in[j] = true;
          q.push_back(j);
        }
    }
    TrackSet out;
    for (size_t i = 0; i < v.cells.size(); ++i)
      if (in[i]) out = ts_union(out, TrackSet{{v.cells[i].track, DefSubset::from_cell(v.cells[i].cell)}});
    return out;
  };
  Separation out{grow(B), grow(C)};
  if (!ts_empty(ts_intersect(out.U, out.V))) throw Error(ErrorKind::Internal, "separators overlap");
  if (!is_open(s, out.U) || !is_open(s, out.V)) throw Error(ErrorKind::Internal, "separator is not open");
  return out;
}

}  // namespace omt
