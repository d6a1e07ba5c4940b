#include "omt/curves.hpp"

#include <algorithm>
#include <sstream>

namespace omt {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

const AffineMap& end_piece(const Curve& g) {
  const ExtRat e = g.end();
  Side side = g.end_at_a ? Side::Right : Side::Left;
  for (const auto& [c, m] : g.map.pieces) {
    if (c.point) continue;
    bool hit = side == Side::Right ? (c.lo <= e && e < c.hi) : (c.lo < e && e <= c.hi);
    if (hit) return m;
  }
  throw Error(ErrorKind::Internal, "curve undefined near its end");
}

}  // namespace

std::string Curve::str() const {
  std::string m = end_piece(*this).str();
  std::replace(m.begin(), m.end(), 'x', 't');
  return "track=" + std::to_string(track) + "; map=" + m + "; domain=(" + a.str() + "," + b.str() +
         "); end=" + (end_at_a ? "a" : "b");
}

Curve Curve::parse(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw Error(ErrorKind::ParseError, "curve field without '=': " + part);
    kv[trim(part.substr(0, eq))] = trim(part.substr(eq + 1));
  }
  for (const char* k : {"track", "map", "domain", "end"})
    if (!kv.count(k)) throw Error(ErrorKind::ParseError, std::string("curve is missing '") + k + "'");
  std::string m = kv["map"];
  std::replace(m.begin(), m.end(), 't', 'x');
  DefSubset d = DefSubset::parse(kv["domain"]);
  auto cs = cells(d);
  if (cs.size() != 1 || cs[0].point || d.components()[0].lo_closed || d.components()[0].hi_closed)
    throw Error(ErrorKind::ParseError, "curve domain must be one open interval");
  if (kv["end"] != "a" && kv["end"] != "b") throw Error(ErrorKind::ParseError, "curve end must be 'a' or 'b'");
  const std::string& tr = kv["track"];
  if (tr.empty() || tr.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorKind::ParseError, "bad curve track '" + tr + "'");
  return affine_curve(std::stoi(tr), AffineMap::parse(m), cs[0].lo, cs[0].hi, kv["end"] == "a");
}

Curve affine_curve(int track, const AffineMap& m, const ExtRat& a, const ExtRat& b, bool end_at_a) {
  Curve g;
  g.a = a;
  g.b = b;
  g.end_at_a = end_at_a;
  g.track = track;
  g.map.pieces.push_back({Cell::open(a, b), m});
  return g;
}

Curve germ_curve(const Anchor& germ) {
  if (germ.value.is_neg_inf())
    return affine_curve(germ.track, AffineMap::identity(), ExtRat::neg_inf(), ExtRat(0), true);
  if (germ.value.is_pos_inf())
    return affine_curve(germ.track, AffineMap::identity(), ExtRat(0), ExtRat::pos_inf(), false);
  Rat s = germ.side == Side::Right ? 1 : -1;
  return affine_curve(germ.track, AffineMap(s, germ.value), ExtRat(0), ExtRat(1), true);
}

Curve stationary_curve(const Point& p) {
  return affine_curve(p.track, AffineMap::constant(ExtRat(p.pos)), ExtRat(0), ExtRat(1), true);
}

const char* limit_side_name(LimitSide s) {
  switch (s) {
    case LimitSide::Right: return "right";
    case LimitSide::Left: return "left";
    case LimitSide::Stationary: return "stationary";
  }
  return "";
}

std::optional<ELimit> e_limit_side(const Curve& g) {
  auto lim = limit_pl(g.map, g.end(), g.end_at_a ? Side::Right : Side::Left);
  if (!lim) return std::nullopt;
  LimitSide s = lim->mode == Approach::Stationary ? LimitSide::Stationary
                : lim->mode == Approach::FromAbove ? LimitSide::Right
                                                   : LimitSide::Left;
  return ELimit{lim->value, s};
}

TrackSet claimants(const Space& s, const Anchor& germ) {
  TrackSet out;
  for (const auto& f : s.flags)
    if (f.track == germ.track && f.side == germ.side && germ.value.finite() && f.region.contains(germ.value.value()))
      out[f.track] = out[f.track].unite(DefSubset::point(germ.value.value()));
  for (const auto& b : s.branches) {
    if (b.to != germ.track || b.side != germ.side) continue;
    if (b.map.is_constant()) {
      if (b.map.beta == germ.value) out[b.from] = out[b.from].unite(b.domain);
      continue;
    }
    if (!germ.value.finite()) continue;
    Rat x = b.map.inverse().apply(germ.value.value()).value();
    if (b.domain.contains(x)) out[b.from] = out[b.from].unite(DefSubset::point(x));
  }
  return out;
}

TrackSet tau_limit(const Space& s, const Curve& g) {
  auto e = e_limit_side(g);
  if (!e) return {};
  if (e->side == LimitSide::Stationary) {
    if (!e->value.finite() || !s.contains({g.track, e->value.value()})) return {};
    return {{g.track, DefSubset::point(e->value.value())}};
  }
  return claimants(s, {g.track, e->value, e->side == LimitSide::Right ? Side::Right : Side::Left});
}

bool curves_equivalent(const Curve& g, const Curve& h) {
  auto a = e_limit_side(g), b = e_limit_side(h);
  if (!a || !b) return false;
  return g.track == h.track && *a == *b;
}

std::optional<Point> apply(const PiecewiseMap& h, const Point& x) {
  for (const auto& a : h)
    if (a.src_track == x.track && a.src.contains(x.pos)) {
      ExtRat v = a.map.apply(x.pos);
      if (!v.finite()) return std::nullopt;
      return Point{a.dst_track, v.value()};
    }
  return std::nullopt;
}

PiecewiseMap invert(const PiecewiseMap& h) {
  PiecewiseMap out;
  for (const auto& a : h) {
    if (a.src.point) {
      ExtRat v = a.map.apply(a.src.lo.value());
      out.push_back({a.dst_track, Cell::at(v.value()), AffineMap::constant(a.src.lo), a.src_track});
      continue;
    }
    if (a.map.is_constant()) throw Error(ErrorKind::NonInjectiveMap, "constant piece on " + a.src.str());
    ExtRat lo = a.map.apply_ext(a.src.lo), hi = a.map.apply_ext(a.src.hi);
    if (hi < lo) std::swap(lo, hi);
    out.push_back({a.dst_track, Cell::open(lo, hi), a.map.inverse(), a.src_track});
  }
  return out;
}

TrackSet image_set(const PiecewiseMap& h) {
  TrackSet out;
  for (const auto& a : invert(h)) out[a.src_track] = out[a.src_track].unite(DefSubset::from_cell(a.src));
  return out;
}

TrackSet domain_set(const PiecewiseMap& h) {
  TrackSet out;
  for (const auto& a : h) out[a.src_track] = out[a.src_track].unite(DefSubset::from_cell(a.src));
  return out;
}

std::string map_str(const PiecewiseMap& h) {
  std::string s;
  for (const auto& a : h)
    s += std::to_string(a.src_track) + " " + a.src.str() + " -> " + std::to_string(a.dst_track) + " " +
         a.map.str() + "\n";
  return s;
}

namespace {

std::vector<Rat> breakpoints(const Space& s, int t) {
  std::vector<Rat> cuts = s.domain(t).endpoints();
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
  return cuts;
}

std::vector<Rat> pull_back(const AffineMap& m, const std::vector<Rat>& values) {
  std::vector<Rat> out;
  if (m.is_constant()) return out;
  AffineMap inv = m.inverse();
  for (const Rat& v : values) out.push_back(inv.apply(v).value());
  return out;
}

const Assignment* covering(const PiecewiseMap& h, int track, const Cell& c) {
  for (const auto& a : h)
    if (a.src_track == track && DefSubset::from_cell(a.src).contains_cell(c)) return &a;
  return nullptr;
}

const Assignment* germ_piece(const PiecewiseMap& h, const Anchor& germ) {
  for (const auto& a : h)
    if (a.src_track == germ.track && !a.src.point && side_approach(germ.side, a.src).contains(germ.value)) return &a;
  return nullptr;
}

}  // namespace

ContinuityResult continuity_check(const Space& src, const Space& dst, const PiecewiseMap& h, bool subspace,
                                  std::optional<Point> at) {
  std::map<int, std::vector<Rat>> cuts;
  for (const auto& a : h)
    if (a.src.lo.finite()) {
      cuts[a.src_track].push_back(a.src.lo.value());
      if (a.src.hi.finite()) cuts[a.src_track].push_back(a.src.hi.value());
    }
  std::vector<RefCell> xcells;
  if (at) {
    if (!src.contains(*at)) throw Error(ErrorKind::PointOutsideDomain, at->str());
    Cell c = Cell::at(at->pos);
    xcells.push_back({at->track, c, gens_on(src, at->track, c)});
  } else {
    xcells = build_view(src, cuts).cells;
  }
  std::map<int, std::vector<Rat>> dst_cuts;
  for (const auto& [t, d] : dst.tracks) dst_cuts[t] = breakpoints(dst, t);

  for (const auto& rc : xcells) {
    const Assignment* own = covering(h, rc.track, rc.cell);
    if (!own) {
      if (subspace) continue;
      throw Error(ErrorKind::NotTotal, "map undefined on " + std::to_string(rc.track) + " " + rc.cell.str());
    }
    const AffineMap& phi = own->map;
    const int T = own->dst_track;
    if (!dst.tracks.count(T)) throw Error(ErrorKind::NotTotal, "unknown target track " + std::to_string(T));
    for (const auto& g : rc.gens) {
      std::vector<Rat> germ_cuts;
      for (const auto& a : h)
        if (a.src_track == g.to) {
          auto e = DefSubset::from_cell(a.src).endpoints();
          auto p = pull_back(g.map, e);
          germ_cuts.insert(germ_cuts.end(), p.begin(), p.end());
        }
      for (const Cell& p : refine_cells(DefSubset::from_cell(rc.cell), germ_cuts)) {
        Rat xs = p.sample();
        Anchor germ{g.to, g.map.apply(xs), g.side};
        const Assignment* k = germ_piece(h, germ);
        if (!k) {
          if (subspace) continue;
          throw Error(ErrorKind::NotTotal, "map undefined near germ " + germ.str());
        }
        const AffineMap& psi = k->map;
        AffineMap want = compose(psi, g.map);
        Side want_side = psi.increasing() ? g.side : flip(g.side);
        for (const Cell& q : refine_cells(DefSubset::from_cell(p), pull_back(phi, dst_cuts[T]))) {
          DefSubset ok;
          if (psi.is_constant()) {
            if (T == k->dst_track) ok = agree_on(phi, psi, q);
          } else {
            Cell image = q.point ? Cell::at(phi.apply(q.lo.value()).value())
                         : phi.is_constant()
                             ? Cell::at(phi.beta.value())
                             : Cell::open(std::min(phi.apply_ext(q.lo), phi.apply_ext(q.hi)),
                                          std::max(phi.apply_ext(q.lo), phi.apply_ext(q.hi)));
            for (const Gen& d : gens_on(dst, T, image))
              if (d.to == k->dst_track && d.side == want_side) ok = ok.unite(agree_on(compose(d.map, phi), want, q));
          }
          DefSubset bad = DefSubset::from_cell(q).minus(ok);
          if (bad.empty()) continue;
          Rat x = bad.sample();
          Anchor at_germ{g.to, g.map.apply(x), g.side};
          ContinuityResult r;
          r.ok = false;
          r.at = {rc.track, x};
          r.witness = germ_curve(at_germ);
          r.message = "curve toward " + at_germ.str() + " converges to " + r.at.str() + " but its image does not";
          return r;
        }
      }
    }
  }
  return {};
}

ContinuityResult embedding_check(const Space& src, const Space& dst, const PiecewiseMap& h) {
  ContinuityResult f = continuity_check(src, dst, h, true);
  if (!f.ok) return f;
  ContinuityResult b = continuity_check(dst, src, invert(h), true);
  if (!b.ok) b.message = "inverse: " + b.message;
  return b;
}

Curve random_curve(const Space& s, std::mt19937_64& rng) {
  std::vector<int> ids;
  for (const auto& [t, d] : s.tracks)
    if (!d.empty()) ids.push_back(t);
  if (ids.empty()) throw Error(ErrorKind::Internal, "empty space");
  auto pick = [&](int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(rng)); };
  int t = ids[pick(static_cast<int>(ids.size()))];
  const DefSubset& d = s.domain(t);
  Rat slope(pick(8) + 1, pick(4) + 1);
  slope.canonicalize();
  bool at_a = pick(2) == 0;
  Side side = pick(2) ? Side::Right : Side::Left;
  ValueSet v = side_approach(side, d);
  if (v.empty() || pick(5) == 0) {
    auto cs = cells(d);
    return stationary_curve({t, cs[pick(static_cast<int>(cs.size()))].sample()});
  }
  if ((v.neg_inf || v.pos_inf) && (v.finite.empty() || pick(4) == 0)) {
    Anchor g{t, v.neg_inf ? ExtRat::neg_inf() : ExtRat::pos_inf(), v.neg_inf ? Side::Right : Side::Left};
    return germ_curve(g);
  }
  const auto& comps = v.finite.components();
  const Component& c = comps[pick(static_cast<int>(comps.size()))];
  Rat val;
  const ExtRat& closed_end = side == Side::Right ? c.lo : c.hi;
  if (closed_end.finite() && pick(2) == 0) {
    val = closed_end.value();
  } else {
    Cell cc = c.is_point() ? Cell::at(c.lo.value()) : Cell{false, c.lo, c.hi};
    val = cc.sample();
    if (!cc.point && pick(2) == 0) val = Cell{false, ExtRat(val), c.hi}.sample();
  }
  // image approaches val from the chosen side at the chosen end
  Rat dir = side == Side::Right ? slope : Rat(-slope);
  if (at_a) return affine_curve(t, AffineMap(dir, ExtRat(val)), ExtRat(0), ExtRat(1), true);
  return affine_curve(t, AffineMap(Rat(-dir), ExtRat(val)), ExtRat(-1), ExtRat(0), false);
}

bool compactness_by_curves(const Space& s, int n_samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int i = 0; i < n_samples; ++i)
    if (ts_empty(tau_limit(s, random_curve(s, rng)))) return false;
  return true;
}

}  // namespace omt
