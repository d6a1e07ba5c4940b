#include "omt/space.hpp"

#include <algorithm>
#include <tuple>

namespace omt {

std::string Point::str() const { return "<" + rat_str(pos) + "," + std::to_string(track) + ">"; }

std::string Anchor::str() const {
  return "(" + std::to_string(track) + "," + value.str() + "," + side_name(side) + ")";
}

namespace {

TrackSet prune(TrackSet t) {
  for (auto it = t.begin(); it != t.end();) it = it->second.empty() ? t.erase(it) : std::next(it);
  return t;
}

const DefSubset kEmpty;

const DefSubset& at(const TrackSet& t, int k) {
  auto it = t.find(k);
  return it == t.end() ? kEmpty : it->second;
}

}  // namespace

TrackSet ts_union(const TrackSet& a, const TrackSet& b) {
  TrackSet out = a;
  for (const auto& [k, v] : b) out[k] = at(a, k).unite(v);
  return prune(out);
}

TrackSet ts_intersect(const TrackSet& a, const TrackSet& b) {
  TrackSet out;
  for (const auto& [k, v] : a) out[k] = v.intersect(at(b, k));
  return prune(out);
}

TrackSet ts_minus(const TrackSet& a, const TrackSet& b) {
  TrackSet out;
  for (const auto& [k, v] : a) out[k] = v.minus(at(b, k));
  return prune(out);
}

bool ts_equal(const TrackSet& a, const TrackSet& b) { return prune(a) == prune(b); }
bool ts_empty(const TrackSet& a) { return prune(a).empty(); }
bool ts_subset(const TrackSet& a, const TrackSet& b) { return ts_empty(ts_minus(a, b)); }

bool ts_finite(const TrackSet& a) {
  return std::all_of(a.begin(), a.end(), [](const auto& kv) { return kv.second.is_finite(); });
}

bool ts_contains(const TrackSet& a, const Point& p) { return at(a, p.track).contains(p.pos); }

std::vector<Point> ts_points(const TrackSet& a) {
  std::vector<Point> out;
  for (const auto& [k, v] : a)
    for (const Rat& r : v.points()) out.push_back({k, r});
  return out;
}

std::string ts_str(const TrackSet& a) {
  TrackSet p = prune(a);
  if (p.empty()) return "empty";
  std::string s;
  for (const auto& [k, v] : p) s += (s.empty() ? "" : "; ") + std::to_string(k) + ": " + v.str();
  return s;
}

void Space::add_track(int id, const DefSubset& domain) { tracks[id] = tracks[id].unite(domain); }

void Space::add_flag(int track, const DefSubset& region, Side side) {
  if (!region.empty()) flags.push_back({track, region, side});
}

void Space::add_branch(int from, const DefSubset& domain, const AffineMap& map, int to, Side side) {
  if (!domain.empty()) branches.push_back({from, domain, map, to, side});
}

void Space::add_branch_splitting(int from, const DefSubset& domain, const AffineMap& map, int to, Side side) {
  if (from != to) return add_branch(from, domain, map, to, side);
  DefSubset fixed;
  for (const Cell& c : cells(domain)) fixed = fixed.unite(agree_on(map, AffineMap::identity(), c));
  add_branch(from, domain.minus(fixed), map, to, side);
  add_flag(from, fixed.intersect(side_approach(side, this->domain(from)).finite), side);
}

void Space::canonicalize() {
  std::map<std::pair<int, Side>, DefSubset> fm;
  for (const auto& f : flags) fm[{f.track, f.side}] = fm[{f.track, f.side}].unite(f.region);
  flags.clear();
  for (const auto& [k, r] : fm)
    if (!r.empty()) flags.push_back({k.first, r, k.second});
  using Key = std::tuple<int, int, Side, AffineMap>;
  std::map<Key, DefSubset> bm;
  for (const auto& b : branches) {
    Key k{b.from, b.to, b.side, b.map};
    bm[k] = bm[k].unite(b.domain);
  }
  branches.clear();
  for (const auto& [k, d] : bm)
    if (!d.empty()) branches.push_back({std::get<0>(k), d, std::get<3>(k), std::get<1>(k), std::get<2>(k)});
}

const DefSubset& Space::domain(int track) const {
  auto it = tracks.find(track);
  if (it == tracks.end()) throw Error(ErrorKind::WellFormed, "unknown track " + std::to_string(track));
  return it->second;
}

bool Space::contains(const Point& p) const {
  auto it = tracks.find(p.track);
  return it != tracks.end() && it->second.contains(p.pos);
}

bool Space::finite() const {
  return std::all_of(tracks.begin(), tracks.end(), [](const auto& kv) { return kv.second.is_finite(); });
}

bool Space::bounded() const {
  return std::all_of(tracks.begin(), tracks.end(), [](const auto& kv) { return kv.second.bounded(); });
}

void Space::check_well_formed() const {
  auto fail = [](const std::string& m) { throw Error(ErrorKind::WellFormed, m); };
  for (const auto& f : flags) {
    const DefSubset& d = domain(f.track);
    if (!f.region.subset_of(d)) fail("flag region " + f.region.str() + " outside track " + std::to_string(f.track));
    DefSubset bad = f.region.minus(side_approach(f.side, d).finite);
    if (!bad.empty())
      fail("flag region on track " + std::to_string(f.track) + " not " + side_name(f.side) +
           "-approachable at " + bad.str());
  }
  for (const auto& b : branches) {
    const DefSubset& d = domain(b.from);
    ValueSet sa = side_approach(b.side, domain(b.to));
    if (!b.domain.subset_of(d)) fail("branch domain " + b.domain.str() + " outside track " + std::to_string(b.from));
    for (const Cell& c : cells(b.domain)) {
      ValueSet img = image_of(b.map, c);
      if (!img.minus(sa).empty())
        fail("branch " + b.map.str() + " on " + c.str() + " leaves the " + side_name(b.side) +
             "-approachable part of track " + std::to_string(b.to));
      if (b.from == b.to && !agree_on(b.map, AffineMap::identity(), c).empty())
        fail("branch " + b.map.str() + " has a fixed point on cell " + c.str() + " of track " +
             std::to_string(b.from));
    }
  }
}

std::vector<Gen> gens_on(const Space& s, int track, const Cell& c) {
  std::vector<Gen> out;
  for (size_t i = 0; i < s.flags.size(); ++i) {
    const auto& f = s.flags[i];
    if (f.track == track && f.region.contains_cell(c))
      out.push_back({track, AffineMap::identity(), f.side, true, static_cast<int>(i)});
  }
  for (size_t i = 0; i < s.branches.size(); ++i) {
    const auto& b = s.branches[i];
    if (b.from == track && b.domain.contains_cell(c)) out.push_back({b.to, b.map, b.side, false, static_cast<int>(i)});
  }
  return out;
}

const RefCell* CellView::locate(const Point& p) const {
  for (const auto& rc : cells)
    if (rc.track == p.track && rc.cell.contains(p.pos)) return &rc;
  return nullptr;
}

CellView build_view(const Space& s, const std::map<int, std::vector<Rat>>& extra) {
  CellView v;
  for (const auto& [t, d] : s.tracks) {
    std::vector<Rat> cuts = d.endpoints();
    for (const auto& f : s.flags)
      if (f.track == t) {
        auto e = f.region.endpoints();
        cuts.insert(cuts.end(), e.begin(), e.end());
      }
    for (const auto& b : s.branches)
      if (b.from == t) {
        auto e = b.domain.endpoints();
        cuts.insert(cuts.end(), e.begin(), e.end());
      }
    if (auto it = extra.find(t); it != extra.end()) cuts.insert(cuts.end(), it->second.begin(), it->second.end());
    for (const Cell& c : refine_cells(d, cuts)) v.cells.push_back({t, c, gens_on(s, t, c)});
  }
  return v;
}

DefSubset covered(const std::vector<Gen>& gens, const Cell& c, int t, const AffineMap& f, Side side) {
  DefSubset out;
  for (const auto& g : gens)
    if (g.to == t && g.side == side) out = out.unite(agree_on(g.map, f, c));
  return out;
}

std::set<Anchor> anchors(const Space& s, const Point& x) {
  if (!s.contains(x)) throw Error(ErrorKind::PointOutsideDomain, x.str());
  std::set<Anchor> out;
  for (const auto& f : s.flags)
    if (f.track == x.track && f.region.contains(x.pos)) out.insert({x.track, ExtRat(x.pos), f.side});
  for (const auto& b : s.branches)
    if (b.from == x.track && b.domain.contains(x.pos)) out.insert({b.to, b.map.apply(x.pos), b.side});
  return out;
}

std::set<ExtRat> e_set(const Space& s, const Point& x) {
  std::set<ExtRat> out;
  for (const auto& a : anchors(s, x)) out.insert(a.value);
  return out;
}

TrackSet basic_nbhd(const Space& s, const Point& x, const Rat& eps) {
  TrackSet out;
  out[x.track] = DefSubset::point(x.pos);
  for (const auto& a : anchors(s, x)) {
    DefSubset g;
    if (a.side == Side::Right) {
      if (a.value.is_neg_inf())
        g = DefSubset::interval(ExtRat::neg_inf(), ExtRat(Rat(-1 / eps)), false, false);
      else
        g = DefSubset::interval(a.value, ExtRat(Rat(a.value.value() + eps)), false, false);
    } else {
      if (a.value.is_pos_inf())
        g = DefSubset::interval(ExtRat(Rat(1 / eps)), ExtRat::pos_inf(), false, false);
      else
        g = DefSubset::interval(ExtRat(Rat(a.value.value() - eps)), a.value, false, false);
    }
    out[a.track] = out[a.track].unite(g.intersect(s.domain(a.track)));
  }
  return prune(out);
}

namespace {

std::string branch_str(const Space& s, int i) {
  const Branch& b = s.branches[i];
  return "branch " + std::to_string(b.from) + "->" + std::to_string(b.to) + " " + b.map.str() + " " +
         side_name(b.side) + " on " + b.domain.str();
}

}  // namespace

std::vector<Violation> validate_topology(const Space& s) {
  std::vector<Violation> out;
  CellView view = build_view(s);
  for (const auto& rc : view.cells) {
    for (const auto& a : rc.gens) {
      for (size_t di = 0; di < s.branches.size(); ++di) {
        const Branch& d = s.branches[di];
        if (d.from != a.to) continue;
        for (const Cell& k : cells(d.domain)) {
          if (k.point) continue;
          DefSubset p = preimage_in(a.map, side_approach(a.side, k), rc.cell);
          if (p.empty()) continue;
          AffineMap req;
          Side rs;
          if (d.map.is_constant()) {
            req = d.map;
            rs = d.side;
          } else {
            req = compose(d.map, a.map);
            rs = d.map.increasing() ? a.side : flip(a.side);
          }
          DefSubset miss = p.minus(covered(rc.gens, rc.cell, d.to, req, rs));
          if (miss.empty()) continue;
          Point w{rc.track, miss.sample()};
          Anchor an{a.to, a.map.apply(w.pos), a.side};
          Anchor need{d.to, req.apply(w.pos), rs};
          out.push_back({w, rc, an, branch_str(s, static_cast<int>(di)),
                         "anchor " + an.str() + " of " + w.str() + " requires " + need.str()});
        }
      }
    }
  }
  return out;
}

TrackSet closure(const Space& s, const TrackSet& y) {
  for (const auto& [t, v] : y)
    if (!v.empty() && (!s.tracks.count(t) || !v.subset_of(s.domain(t))))
      throw Error(ErrorKind::SubsetOutsideDomain, "track " + std::to_string(t) + ": " + v.str());
  std::map<std::pair<int, Side>, ValueSet> sa;
  for (const auto& [t, v] : y) {
    sa[{t, Side::Right}] = side_approach(Side::Right, v);
    sa[{t, Side::Left}] = side_approach(Side::Left, v);
  }
  TrackSet out = y;
  CellView view = build_view(s);
  for (const auto& rc : view.cells) {
    DefSubset add;
    for (const auto& g : rc.gens) {
      auto it = sa.find({g.to, g.side});
      if (it == sa.end()) continue;
      add = add.unite(preimage_in(g.map, it->second, rc.cell));
    }
    if (!add.empty()) out[rc.track] = out[rc.track].unite(add);
  }
  return prune(out);
}

TrackSet interior(const Space& s, const TrackSet& y) {
  TrackSet all = s.all();
  if (!ts_subset(y, all)) throw Error(ErrorKind::SubsetOutsideDomain, ts_str(y));
  return ts_minus(all, closure(s, ts_minus(all, y)));
}

TrackSet frontier(const Space& s, const TrackSet& y) { return ts_minus(closure(s, y), y); }

bool is_open(const Space& s, const TrackSet& y) { return ts_equal(y, interior(s, y)); }

bool is_closed(const Space& s, const TrackSet& y) { return ts_equal(y, closure(s, y)); }

namespace {

struct Src {
  int from;
  Cell cell;
  AffineMap map;
  int to;
  Side side;
};

std::vector<Rat> two_points(const Cell& c) {
  if (c.point) return {c.lo.value()};
  Rat m = c.sample();
  Rat other = Cell{false, c.lo, ExtRat(m)}.sample();
  return {m, other};
}

}  // namespace

HausdorffResult is_hausdorff(const Space& s) {
  std::vector<Src> src;
  for (const auto& f : s.flags)
    for (const Cell& c : cells(f.region)) src.push_back({f.track, c, AffineMap::identity(), f.track, f.side});
  for (const auto& b : s.branches)
    for (const Cell& c : cells(b.domain)) src.push_back({b.from, c, b.map, b.to, b.side});

  auto witness = [&](const Src& a, const Src& b) -> std::optional<std::pair<Point, Point>> {
    ValueSet v = image_of(a.map, a.cell).intersect(image_of(b.map, b.cell));
    if (v.empty()) return std::nullopt;
    std::vector<Point> xs, ys;
    if (!a.map.is_constant() && !b.map.is_constant()) {
      DefSubset w = v.finite;
      if (a.from == b.from) {
        DefSubset same;
        for (const Cell& c : cells(w)) same = same.unite(agree_on(a.map.inverse(), b.map.inverse(), c));
        w = w.minus(same);
      }
      if (w.empty()) return std::nullopt;
      Rat val = w.sample();
      return std::make_pair(Point{a.from, a.map.inverse().apply(val).value()},
                            Point{b.from, b.map.inverse().apply(val).value()});
    }
    ExtRat c = a.map.is_constant() ? a.map.beta : b.map.beta;
    auto cands = [&](const Src& z) {
      std::vector<Point> out;
      if (z.map.is_constant())
        for (const Rat& r : two_points(z.cell)) out.push_back({z.from, r});
      else
        out.push_back({z.from, z.map.inverse().apply(c.value()).value()});
      return out;
    };
    for (const Point& x : cands(a))
      for (const Point& y : cands(b))
        if (!(x == y)) return std::make_pair(x, y);
    return std::nullopt;
  };

  for (size_t i = 0; i < src.size(); ++i) {
    const Src& a = src[i];
    if (a.map.is_constant() && !a.cell.point) {
      auto p = two_points(a.cell);
      return {false, {a.from, p[0]}, {a.from, p[1]}, {a.to, a.map.beta, a.side}};
    }
    for (size_t j = i + 1; j < src.size(); ++j) {
      const Src& b = src[j];
      if (a.to != b.to || a.side != b.side) continue;
      if (auto w = witness(a, b)) {
        ExtRat v = a.map.is_constant() ? a.map.beta : a.map.apply(w->first.pos);
        return {false, w->first, w->second, {a.to, v, a.side}};
      }
    }
  }
  return {};
}

TrackSet isolated_points(const Space& s) {
  TrackSet out = s.tracks;
  for (const auto& f : s.flags) out[f.track] = out[f.track].minus(f.region);
  for (const auto& b : s.branches) out[b.from] = out[b.from].minus(b.domain);
  return prune(out);
}

bool is_definably_separable(const Space& s) { return ts_finite(isolated_points(s)); }

int n_of_point(const Space& s, const Point& x) { return 1 + static_cast<int>(anchors(s, x).size()); }

Space push_forward(const Space& s, const std::map<int, AffineMap>& maps, const std::map<int, int>& perm) {
  auto phi = [&](int t) {
    auto it = maps.find(t);
    AffineMap m = it == maps.end() ? AffineMap::identity() : it->second;
    if (m.is_constant()) throw Error(ErrorKind::NonInjectiveMap, "constant reparametrization of track " + std::to_string(t));
    return m;
  };
  auto pi = [&](int t) {
    auto it = perm.find(t);
    return it == perm.end() ? t : it->second;
  };
  std::set<int> seen;
  for (const auto& [t, d] : s.tracks)
    if (!seen.insert(pi(t)).second) throw Error(ErrorKind::NonInjectiveMap, "track permutation is not injective");
  Space out;
  out.name = s.name;
  for (const auto& [t, d] : s.tracks) out.add_track(pi(t), d.image(phi(t)));
  for (const auto& f : s.flags) {
    AffineMap m = phi(f.track);
    out.add_flag(pi(f.track), f.region.image(m), m.increasing() ? f.side : flip(f.side));
  }
  for (const auto& b : s.branches) {
    AffineMap ms = phi(b.from), mt = phi(b.to);
    AffineMap g = compose(mt, compose(b.map, ms.inverse()));
    out.add_branch(pi(b.from), b.domain.image(ms), g, pi(b.to), mt.increasing() ? b.side : flip(b.side));
  }
  out.canonicalize();
  return out;
}

}  // namespace omt
