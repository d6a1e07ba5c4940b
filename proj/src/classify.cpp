#include "omt/classify.hpp"

#include <algorithm>
#include <numeric>

namespace omt {

const char* label_name(PieceLabel l) {
  switch (l) {
    case PieceLabel::Euclidean: return "euclidean";
    case PieceLabel::RightHalfOpen: return "right-half-open";
    case PieceLabel::LeftHalfOpen: return "left-half-open";
    case PieceLabel::Discrete: return "discrete";
  }
  return "";
}

const char* weight_name(WeightClass w) {
  switch (w) {
    case WeightClass::DensityWeight: return "density";
    case WeightClass::CardinalityWeight: return "cardinality";
    case WeightClass::Finite: return "finite";
  }
  return "";
}

PieceLabel label_of(const std::vector<Gen>& gens) {
  bool r = false, l = false;
  for (const auto& g : gens)
    if (g.self) (g.side == Side::Right ? r : l) = true;
  if (r && l) return PieceLabel::Euclidean;
  if (r) return PieceLabel::RightHalfOpen;
  if (l) return PieceLabel::LeftHalfOpen;
  return PieceLabel::Discrete;
}

namespace {

void add_inside(std::vector<Rat>& cuts, const Cell& c, const ExtRat& v) {
  if (v.finite() && c.contains(v.value())) cuts.push_back(v.value());
}

}  // namespace

CellView refine_canonical(const Space& s) {
  std::map<int, std::vector<Rat>> extra;
  // values of generators hitting the data breakpoints of their target track
  {
    CellView v0 = build_view(s);
    std::map<int, std::vector<Rat>> bps;
    for (const auto& rc : v0.cells) {
      if (rc.cell.lo.finite()) bps[rc.track].push_back(rc.cell.lo.value());
      if (rc.cell.hi.finite()) bps[rc.track].push_back(rc.cell.hi.value());
    }
    for (const auto& rc : v0.cells) {
      if (rc.cell.point) continue;
      for (const auto& g : rc.gens) {
        if (g.self || g.map.is_constant()) continue;
        AffineMap inv = g.map.inverse();
        for (const Rat& b : bps[g.to]) add_inside(extra[rc.track], rc.cell, inv.apply(b));
      }
    }
  }
  for (int round = 0; round < 512; ++round) {
    CellView v = build_view(s, extra);
    bool changed = false;
    for (const auto& rc : v.cells) {
      if (rc.cell.point) continue;
      std::vector<Rat> cuts;
      for (size_t i = 0; i < rc.gens.size(); ++i)
        for (size_t j = i + 1; j < rc.gens.size(); ++j) {
          if (rc.gens[i].to != rc.gens[j].to) continue;
          DefSubset a = agree_on(rc.gens[i].map, rc.gens[j].map, rc.cell);
          if (a.is_finite())
            for (const Rat& p : a.points()) cuts.push_back(p);
        }
      ValueSet closed{DefSubset::from_cell(rc.cell).e_closure(), false, false};
      for (const auto& g : rc.gens) {
        if (g.self || g.to != rc.track) continue;
        DefSubset hit = preimage_in(g.map, closed, rc.cell);
        if (hit.empty()) continue;
        if (!g.map.is_constant()) {
          AffineMap inv = g.map.inverse();
          add_inside(cuts, rc.cell, inv.apply_ext(rc.cell.lo));
          add_inside(cuts, rc.cell, inv.apply_ext(rc.cell.hi));
        }
        for (const Rat& e : hit.endpoints()) add_inside(cuts, rc.cell, ExtRat(e));
      }
      for (const Rat& c : cuts) {
        auto& ex = extra[rc.track];
        if (std::find(ex.begin(), ex.end(), c) == ex.end()) {
          ex.push_back(c);
          changed = true;
        }
      }
    }
    if (!changed) return v;
  }
  throw Error(ErrorKind::Internal, "cell refinement did not stabilise");
}

std::map<PieceLabel, TrackSet> classify_points(const Space& s) {
  std::map<PieceLabel, TrackSet> out;
  for (const auto& [t, d] : s.tracks) {
    DefSubset r, l;
    for (const auto& f : s.flags)
      if (f.track == t) (f.side == Side::Right ? r : l) = f.region;
    auto put = [&](PieceLabel k, const DefSubset& v) {
      if (!v.empty()) out[k][t] = v;
    };
    put(PieceLabel::Euclidean, r.intersect(l));
    put(PieceLabel::RightHalfOpen, r.minus(l));
    put(PieceLabel::LeftHalfOpen, l.minus(r));
    put(PieceLabel::Discrete, d.minus(r.unite(l)));
  }
  return out;
}

namespace {

void require_hausdorff(const Space& s) {
  auto h = is_hausdorff(s);
  if (!h.ok)
    throw Error(ErrorKind::NotHausdorff, h.x.str() + " and " + h.y.str() + " share the anchor " + h.shared.str());
}

}  // namespace

Decomposition decompose_T2(const Space& s) {
  require_hausdorff(s);
  Decomposition out;
  for (const auto& rc : refine_canonical(s).cells) {
    if (rc.cell.point) {
      out.leftover.push_back({rc.track, rc.cell.lo.value()});
      continue;
    }
    ValueSet closed{DefSubset::from_cell(rc.cell).e_closure(), false, false};
    for (const auto& g : rc.gens)
      if (!g.self && g.to == rc.track && !preimage_in(g.map, closed, rc.cell).empty())
        throw Error(ErrorKind::Internal, "locality fails on " + rc.cell.str());
    out.pieces.push_back({rc.track, rc.cell, label_of(rc.gens)});
  }
  return out;
}

Piece tame_interval_T1(const Space& s) {
  for (const auto& rc : build_view(s).cells) {
    if (rc.cell.point) continue;
    Rat x0 = rc.cell.sample();
    auto fixes = [&](const Rat& x) {
      for (const auto& g : rc.gens)
        if (!g.self && g.to == rc.track && g.map.apply(x) == ExtRat(x)) return true;
      return false;
    };
    if (fixes(x0)) x0 = Cell{false, rc.cell.lo, ExtRat(x0)}.sample();
    if (fixes(x0)) x0 = Cell{false, rc.cell.lo, ExtRat(x0)}.sample();
    Rat r = 1;
    if (rc.cell.lo.finite()) r = std::min(r, Rat(x0 - rc.cell.lo.value()));
    if (rc.cell.hi.finite()) r = std::min(r, Rat(rc.cell.hi.value() - x0));
    r /= 2;
    for (const auto& g : rc.gens) {
      if (g.self || g.to != rc.track) continue;
      ExtRat v = g.map.apply(x0);
      if (!v.finite()) continue;
      Rat gap = abs(v.value() - x0);
      Rat bound = gap / (1 + abs(g.map.alpha)) / 2;
      r = std::min(r, bound);
    }
    return {rc.track, Cell::open(ExtRat(Rat(x0 - r)), ExtRat(Rat(x0 + r))), label_of(rc.gens)};
  }
  throw Error(ErrorKind::FiniteSpace, "no interval in the space");
}

RegularResult is_regular(const Space& s) {
  require_hausdorff(s);
  for (const auto& rc : build_view(s).cells) {
    for (const auto& a : rc.gens) {
      for (const auto& d : s.branches) {
        if (d.to != a.to || d.map.is_constant()) continue;
        for (const Cell& k : cells(d.domain)) {
          if (k.point) continue;
          ValueSet acc = side_approach(a.side, image_of(d.map, k).finite);
          DefSubset p = preimage_in(a.map, acc, rc.cell);
          if (p.empty()) continue;
          AffineMap req = compose(d.map.inverse(), a.map);
          Side rs = d.map.increasing() ? a.side : flip(a.side);
          DefSubset miss = p.minus(covered(rc.gens, rc.cell, d.from, req, rs));
          if (miss.empty()) continue;
          RegularResult r;
          r.ok = false;
          r.witness = {rc.track, miss.sample()};
          r.anchor = {a.to, a.map.apply(r.witness.pos), a.side};
          r.missing = {d.from, req.apply(r.witness.pos), rs};
          r.datum = "branch " + std::to_string(d.from) + "->" + std::to_string(d.to) + " " + d.map.str() + " on " +
                    d.domain.str();
          return r;
        }
      }
    }
  }
  return {};
}

bool regular_predicate(const Space& s) { return is_hausdorff(s).ok && is_regular(s).ok; }

ValueSet anchored_values(const Space& s, int track, Side side) {
  ValueSet out;
  for (const auto& f : s.flags)
    if (f.track == track && f.side == side) out.finite = out.finite.unite(f.region);
  for (const auto& b : s.branches)
    if (b.to == track && b.side == side)
      for (const Cell& c : cells(b.domain)) out = out.unite(image_of(b.map, c));
  return out;
}

std::vector<Uncovered> uncovered_germs(const Space& s) {
  std::vector<Uncovered> out;
  for (const auto& [t, d] : s.tracks)
    for (Side side : {Side::Right, Side::Left}) {
      ValueSet u = side_approach(side, d).minus(anchored_values(s, t, side));
      if (!u.empty()) out.push_back({t, side, u});
    }
  return out;
}

CompactResult is_definably_compact(const Space& s) {
  auto u = uncovered_germs(s);
  if (u.empty()) return {};
  const Uncovered& g = u.front();
  ExtRat v = g.values.neg_inf   ? ExtRat::neg_inf()
             : g.values.pos_inf ? ExtRat::pos_inf()
                                : ExtRat(g.values.finite.sample());
  CompactResult r;
  r.ok = false;
  r.germ = {g.track, v, g.side};
  r.witness = germ_curve(r.germ);
  return r;
}

bool is_near_compact(const Space& s) {
  for (const auto& u : uncovered_germs(s))
    if (!u.values.finite.is_finite()) return false;
  return true;
}

FdiResult fdi_check(const Space& s) {
  for (const auto& b : s.branches) {
    for (const Cell& k : cells(b.domain)) {
      if (k.point) continue;
      const DefSubset& dt = s.domain(b.to);
      Rat x0 = k.sample();
      Rat r = 1;
      if (k.lo.finite()) r = std::min(r, Rat(x0 - k.lo.value()));
      if (k.hi.finite()) r = std::min(r, Rat(k.hi.value() - x0));
      r /= 2;
      ExtRat v = b.map.apply(x0);
      if (b.from == b.to && v.finite()) r = std::min(r, Rat(abs(v.value() - x0) / (1 + abs(b.map.alpha)) / 2));
      Cell kp = Cell::open(ExtRat(Rat(x0 - r)), ExtRat(Rat(x0 + r)));
      DefSubset y;
      if (!b.map.is_constant()) {
        y = DefSubset::from_cell(kp).image(b.map).intersect(dt);
      } else {
        const ExtRat& c = b.map.beta;
        for (Rat delta = r; y.empty() || (b.from == b.to && !y.intersect(DefSubset::from_cell(kp)).empty());
             delta /= 2) {
          DefSubset germ;
          if (c.is_neg_inf())
            germ = DefSubset::interval(ExtRat::neg_inf(), ExtRat(Rat(-1 / delta)), false, false);
          else if (c.is_pos_inf())
            germ = DefSubset::interval(ExtRat(Rat(1 / delta)), ExtRat::pos_inf(), false, false);
          else if (b.side == Side::Right)
            germ = DefSubset::interval(c, ExtRat(Rat(c.value() + delta)), false, false);
          else
            germ = DefSubset::interval(ExtRat(Rat(c.value() - delta)), c, false, false);
          y = germ.intersect(dt);
          if (delta < Rat(1, 1 << 30)) throw Error(ErrorKind::Internal, "no fdi witness germ");
        }
      }
      FdiResult out;
      out.ok = false;
      out.witness = {{b.to, y}};
      out.witness_frontier = frontier(s, out.witness);
      return out;
    }
  }
  return {};
}

WeightClass weight_class(const Space& s) {
  if (s.finite()) return WeightClass::Finite;
  for (const auto& p : decompose_T2(s).pieces)
    if (p.label != PieceLabel::Euclidean) return WeightClass::CardinalityWeight;
  return WeightClass::DensityWeight;
}

Components connected_components(const Space& s) {
  if (!regular_predicate(s)) throw Error(ErrorKind::NotT3, "space is not regular Hausdorff");
  CellView v = refine_canonical(s);
  std::vector<int> parent(v.cells.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  std::vector<bool> in_z(v.cells.size(), false);
  for (size_t i = 0; i < v.cells.size(); ++i)
    in_z[i] = v.cells[i].cell.point || label_of(v.cells[i].gens) == PieceLabel::Euclidean;
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const RefCell& p = v.cells[i];
    if (!p.cell.point) continue;
    for (const auto& a : anchors(s, {p.track, p.cell.lo.value()}))
      for (size_t j = 0; j < v.cells.size(); ++j) {
        const RefCell& e = v.cells[j];
        if (e.cell.point || !in_z[j] || e.track != a.track) continue;
        bool end = a.side == Side::Right ? a.value == e.cell.lo : a.value == e.cell.hi;
        if (end) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
      }
  }
  std::map<int, TrackSet> groups;
  Components out;
  for (size_t i = 0; i < v.cells.size(); ++i) {
    const RefCell& c = v.cells[i];
    TrackSet part{{c.track, DefSubset::from_cell(c.cell)}};
    int root = find(static_cast<int>(i));
    bool euclidean_root = !v.cells[root].cell.point || root != static_cast<int>(i);
    if (in_z[i] && euclidean_root) {
      bool grouped = false;
      for (size_t j = 0; j < v.cells.size() && !grouped; ++j)
        grouped = find(static_cast<int>(j)) == root && !v.cells[j].cell.point;
      if (grouped) {
        groups[root] = ts_union(groups[root], part);
        continue;
      }
    }
    out.singletons = ts_union(out.singletons, part);
  }
  for (const auto& [k, g] : groups) {
    if (!is_closed(s, g)) throw Error(ErrorKind::Internal, "component " + ts_str(g) + " is not closed");
    out.parts.push_back(g);
  }
  return out;
}

}  // namespace omt
