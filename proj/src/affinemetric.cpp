#include "omt/affinemetric.hpp"

#include <algorithm>
#include <map>

namespace omt {

namespace {

void require_hausdorff(const Space& s) {
  auto h = is_hausdorff(s);
  if (!h.ok)
    throw Error(ErrorKind::NotHausdorff, h.x.str() + " and " + h.y.str() + " share the anchor " + h.shared.str());
}

bool euclidean_cell(const RefCell& rc) { return !rc.cell.point && label_of(rc.gens) == PieceLabel::Euclidean; }

// end claims: (view index, 0 = lo end / 1 = hi end) -> point cell index
std::map<std::pair<int, int>, int> end_claims(const Space& s, const CellView& v) {
  std::map<std::pair<int, int>, int> out;
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const RefCell& rc = v.cells[i];
    if (!rc.cell.point) continue;
    for (const Anchor& a : anchors(s, {rc.track, rc.cell.lo.value()})) {
      int gc = germ_cell(v, a);
      if (gc < 0) continue;
      int end = a.value.is_neg_inf() ? 0 : a.value.is_pos_inf() ? 1 : a.side == Side::Right ? 0 : 1;
      out[{gc, end}] = static_cast<int>(i);
    }
  }
  return out;
}

struct GraphBuild {
  GluingGraph g;
  std::map<int, int> vertex_of;  // point cell -> vertex
  std::map<int, int> edge_of;    // interval cell -> edge
};

GraphBuild build_graph(const Space& s, const CellView& v) {
  GraphBuild b;
  for (size_t i = 0; i < v.cells.size(); ++i)
    if (v.cells[i].cell.point) {
      b.vertex_of[static_cast<int>(i)] = static_cast<int>(b.g.vertices.size());
      b.g.vertices.push_back({GraphVertex::PointV, {v.cells[i].track, v.cells[i].cell.lo.value()}});
    }
  auto claims = end_claims(s, v);
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const RefCell& rc = v.cells[i];
    if (!euclidean_cell(rc)) continue;
    GraphEdge e;
    e.track = rc.track;
    e.cell = rc.cell;
    if (rc.cell.bounded()) e.length = rc.cell.hi.value() - rc.cell.lo.value();
    for (int end : {0, 1}) {
      int vx;
      if (auto it = claims.find({static_cast<int>(i), end}); it != claims.end()) {
        vx = b.vertex_of.at(it->second);
      } else {
        vx = static_cast<int>(b.g.vertices.size());
        b.g.vertices.push_back({GraphVertex::OpenEnd, {}});
      }
      (end == 0 ? e.a : e.b) = vx;
    }
    b.edge_of[static_cast<int>(i)] = static_cast<int>(b.g.edges.size());
    b.g.edges.push_back(e);
  }
  return b;
}

std::string vname(int v) { return "v" + std::to_string(v); }

}  // namespace

std::string GluingGraph::str() const {
  std::string out = "vertices:\n";
  for (size_t i = 0; i < vertices.size(); ++i)
    out += "  " + vname(static_cast<int>(i)) + " = " +
           (vertices[i].kind == GraphVertex::PointV ? vertices[i].point.str() : std::string("open end")) + "\n";
  out += "edges:\n";
  for (size_t i = 0; i < edges.size(); ++i) {
    const GraphEdge& e = edges[i];
    out += "  e" + std::to_string(i) + " = track " + std::to_string(e.track) + " " + e.cell.str() + " length " +
           (e.length ? rat_str(*e.length) : std::string("inf")) + ": " + vname(e.a) + " -- " + vname(e.b) + "\n";
  }
  return out;
}

GluingGraph gluing_graph(const Space& s) {
  require_hausdorff(s);
  return build_graph(s, t3_refine(s).view).g;
}

GluingGraph compactified(const GluingGraph& g) {
  GluingGraph out;
  std::vector<int> remap(g.vertices.size(), -1);
  for (size_t i = 0; i < g.vertices.size(); ++i)
    if (g.vertices[i].kind == GraphVertex::PointV) {
      remap[i] = static_cast<int>(out.vertices.size());
      out.vertices.push_back(g.vertices[i]);
    }
  int open = -1;
  for (size_t i = 0; i < g.vertices.size(); ++i)
    if (g.vertices[i].kind == GraphVertex::OpenEnd) {
      if (open < 0) {
        open = static_cast<int>(out.vertices.size());
        out.vertices.push_back({GraphVertex::OpenEnd, {}});
      }
      remap[i] = open;
    }
  for (GraphEdge e : g.edges) {
    e.a = remap[e.a];
    e.b = remap[e.b];
    out.edges.push_back(e);
  }
  return out;
}

AffineResult is_affine(const Space& s) {
  require_hausdorff(s);
  AffineResult r;
  for (const auto& p : decompose_T2(s).pieces)
    if (p.label != PieceLabel::Euclidean) {
      r.affine = false;
      r.witness = p;
      return r;
    }
  r.graph = compactified(gluing_graph(s));
  return r;
}

MetricExpr synthesize_metric(const Space& s) {
  require_hausdorff(s);
  if (!s.bounded()) throw Error(ErrorKind::Unbounded, "metric synthesis needs bounded tracks");
  for (const auto& p : decompose_T2(s).pieces)
    if (p.label == PieceLabel::RightHalfOpen || p.label == PieceLabel::LeftHalfOpen)
      throw Error(ErrorKind::HalfOpenPiece,
                  std::string(label_name(p.label)) + " piece on track " + std::to_string(p.track) + " " + p.cell.str());
  T3View tv = t3_refine(s);
  const CellView& v = tv.view;
  for (const auto& rc : v.cells) {
    if (rc.cell.point) continue;
    for (const auto& g : rc.gens) {
      if (g.self) continue;
      bool live = g.map.is_constant() ? germ_cell(v, {g.to, g.map.beta, g.side}) >= 0 : image_cell(s, v, rc, g) >= 0;
      if (live)
        throw Error(ErrorKind::ExceptionalSetInfinite,
                    "every point of " + rc.cell.str() + " on track " + std::to_string(rc.track) + " accumulates elsewhere");
    }
  }

  MetricExpr m;
  GraphBuild b = build_graph(s, v);
  m.graph = b.g;
  auto claims = end_claims(s, v);
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const RefCell& rc = v.cells[i];
    int idx = static_cast<int>(i);
    if (rc.cell.point) {
      m.pieces.push_back({MetricPiece::Vertex, rc.track, rc.cell, -1, b.vertex_of.at(idx), Rat(0)});
      continue;
    }
    if (euclidean_cell(rc)) {
      m.pieces.push_back({MetricPiece::Edge, rc.track, rc.cell, b.edge_of.at(idx), -1, Rat(0)});
      continue;
    }
    auto lo = claims.find({idx, 0}), hi = claims.find({idx, 1});
    const Rat a = rc.cell.lo.value(), z = rc.cell.hi.value();
    if (lo == claims.end() && hi == claims.end()) {
      m.pieces.push_back({MetricPiece::Clopen, rc.track, rc.cell, -1, -1, Rat(0)});
      m.capped = true;
    } else if (hi == claims.end()) {
      m.pieces.push_back({MetricPiece::Spike, rc.track, rc.cell, -1, b.vertex_of.at(lo->second), a});
    } else if (lo == claims.end()) {
      m.pieces.push_back({MetricPiece::Spike, rc.track, rc.cell, -1, b.vertex_of.at(hi->second), z});
    } else {
      Rat mid = rc.cell.sample();
      int vl = b.vertex_of.at(lo->second), vh = b.vertex_of.at(hi->second);
      m.pieces.push_back({MetricPiece::Spike, rc.track, Cell::open(ExtRat(a), ExtRat(mid)), -1, vl, a});
      m.pieces.push_back({MetricPiece::Spike, rc.track, Cell::at(mid), -1, vh, z});
      m.pieces.push_back({MetricPiece::Spike, rc.track, Cell::open(ExtRat(mid), ExtRat(z)), -1, vh, z});
    }
  }

  size_t nv = m.graph.vertices.size();
  m.vdist.assign(nv, std::vector<std::optional<Rat>>(nv));
  Rat total = 1;
  for (size_t i = 0; i < nv; ++i) m.vdist[i][i] = Rat(0);
  for (const auto& e : m.graph.edges) {
    total += *e.length;
    auto& d = m.vdist[e.a][e.b];
    if (!d || *e.length < *d) d = m.vdist[e.b][e.a] = *e.length;
  }
  for (size_t k = 0; k < nv; ++k)
    for (size_t i = 0; i < nv; ++i)
      for (size_t j = 0; j < nv; ++j)
        if (m.vdist[i][k] && m.vdist[k][j]) {
          Rat via = *m.vdist[i][k] + *m.vdist[k][j];
          if (!m.vdist[i][j] || via < *m.vdist[i][j]) m.vdist[i][j] = via;
        }
  m.apart = total;
  return m;
}

namespace {

const MetricPiece& piece_of(const MetricExpr& m, const Point& p) {
  for (const auto& pc : m.pieces)
    if (pc.track == p.track && pc.cell.contains(p.pos)) return pc;
  throw Error(ErrorKind::PointOutsideDomain, p.str());
}

// position in the graph: a vertex, or a point inside an edge
struct Spot {
  int vertex = -1;
  int edge = -1;
  Rat x;
};

Rat spot_dist(const MetricExpr& m, const Spot& p, const Spot& q) {
  auto ends = [&](const Spot& s) {
    std::vector<std::pair<int, Rat>> out;
    if (s.vertex >= 0) {
      out.push_back({s.vertex, Rat(0)});
    } else {
      const GraphEdge& e = m.graph.edges[s.edge];
      out.push_back({e.a, s.x - e.cell.lo.value()});
      out.push_back({e.b, e.cell.hi.value() - s.x});
    }
    return out;
  };
  Rat best = m.apart;
  if (p.edge >= 0 && p.edge == q.edge) best = abs(p.x - q.x);
  for (const auto& [u, du] : ends(p))
    for (const auto& [w, dw] : ends(q)) {
      if (!m.vdist[u][w]) continue;
      Rat d = du + *m.vdist[u][w] + dw;
      if (d < best) best = d;
    }
  return best;
}

}  // namespace

Rat eval_metric(const MetricExpr& m, const Point& p, const Point& q) {
  const MetricPiece& a = piece_of(m, p);
  const MetricPiece& b = piece_of(m, q);
  if (p == q) return 0;
  if (a.kind == MetricPiece::Clopen || b.kind == MetricPiece::Clopen) return 1;
  auto spot = [](const MetricPiece& pc, const Point& x, Rat& rho) {
    rho = 0;
    Spot s;
    if (pc.kind == MetricPiece::Edge) {
      s.edge = pc.edge;
      s.x = x.pos;
    } else {
      s.vertex = pc.vertex;
      if (pc.kind == MetricPiece::Spike) rho = abs(x.pos - pc.apex);
    }
    return s;
  };
  Rat ra, rb;
  Spot sa = spot(a, p, ra), sb = spot(b, q, rb);
  Rat d = ra + rb + spot_dist(m, sa, sb);
  if (m.capped && d > 1) d = 1;
  return d;
}

std::string MetricExpr::str() const {
  std::string out = "metric\n";
  if (capped) out += "  cap 1\n";
  out += "  apart " + rat_str(apart) + "\n";
  for (const auto& pc : pieces) {
    out += "  track " + std::to_string(pc.track) + " " + pc.cell.str() + ": ";
    switch (pc.kind) {
      case MetricPiece::Edge: out += "edge e" + std::to_string(pc.edge) + ", path length\n"; break;
      case MetricPiece::Vertex: out += "vertex " + vname(pc.vertex) + "\n"; break;
      case MetricPiece::Clopen: out += "clopen, 1 off the diagonal\n"; break;
      case MetricPiece::Spike:
        out += "|x-" + rat_str(pc.apex) + "| + d(" + vname(pc.vertex) + ", y)\n";
        break;
    }
  }
  out += graph.str();
  return out;
}

TwoToOne two_to_one_euclidean(const Space& s) {
  LexEmbedding le = embed_separable_lex(s);
  TwoToOne out;
  DefSubset dom;
  for (const auto& a : le.h) {
    Cell im = Cell::open(a.map.increasing() ? a.map.apply_ext(a.src.lo) : a.map.apply_ext(a.src.hi),
                         a.map.increasing() ? a.map.apply_ext(a.src.hi) : a.map.apply_ext(a.src.lo));
    dom = dom.unite(DefSubset::from_cell(im));
    out.map.push_back({a.src_track, a.src, a.map, 0});
  }
  Space& w = out.target;
  w.name = s.name + "-collapsed";
  int next = 0;
  if (!dom.empty()) {
    w.add_track(0, dom);
    w.add_flag(0, dom, Side::Right);
    w.add_flag(0, dom, Side::Left);
    next = 1;
  }
  std::map<Anchor, Point> owner;
  for (const Point& q : le.leftover) {
    int id = next++;
    DefSubset at = DefSubset::point(q.pos);
    w.add_track(id, at);
    out.map.push_back({q.track, Cell::at(q.pos), AffineMap::constant(ExtRat(q.pos)), id});
    for (const Anchor& a : anchors(s, q)) {
      for (const auto& e : le.h) {
        bool hit = e.src_track == a.track &&
                   (a.value.is_neg_inf()   ? e.src.lo.is_neg_inf()
                    : a.value.is_pos_inf() ? e.src.hi.is_pos_inf()
                    : a.side == Side::Right ? e.src.lo == a.value
                                            : e.src.hi == a.value);
        if (!hit) continue;
        Anchor t{0, e.map.apply_ext(a.value), e.map.increasing() ? a.side : flip(a.side)};
        auto [it, fresh] = owner.emplace(t, q);
        if (!fresh && !(it->second == q))
          throw Error(ErrorKind::Internal, "collapse glues " + q.str() + " and " + it->second.str());
        w.add_branch(id, at, AffineMap::constant(t.value), 0, t.side);
      }
    }
  }
  w.canonicalize();
  w.check_well_formed();
  std::map<std::pair<std::string, std::string>, int> fiber;
  for (const auto& a : out.map) {
    if (a.src.point) continue;
    Cell im = Cell::open(a.map.increasing() ? a.map.apply_ext(a.src.lo) : a.map.apply_ext(a.src.hi),
                         a.map.increasing() ? a.map.apply_ext(a.src.hi) : a.map.apply_ext(a.src.lo));
    out.max_fiber = std::max(out.max_fiber, ++fiber[{im.lo.str(), im.hi.str()}]);
  }
  if (out.max_fiber == 0 && !le.leftover.empty()) out.max_fiber = 1;
  AffineResult ar = is_affine(w);
  if (!ar.affine) throw Error(ErrorKind::Internal, "collapsed space is not cell-wise euclidean");
  out.graph = ar.graph;
  return out;
}

}  // namespace omt
