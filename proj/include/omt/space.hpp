#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "omt/defset.hpp"

namespace omt {

struct Point {
  int track = 0;
  Rat pos;
  friend bool operator==(const Point& a, const Point& b) { return a.track == b.track && a.pos == b.pos; }
  friend bool operator<(const Point& a, const Point& b) {
    if (a.track != b.track) return a.track < b.track;
    return a.pos < b.pos;
  }
  std::string str() const;
};

struct Anchor {
  int track = 0;
  ExtRat value;
  Side side = Side::Right;
  friend bool operator==(const Anchor&, const Anchor&) = default;
  friend bool operator<(const Anchor& a, const Anchor& b) {
    if (a.track != b.track) return a.track < b.track;
    if (a.value != b.value) return a.value < b.value;
    return a.side < b.side;
  }
  std::string str() const;
};

struct SelfFlag {
  int track = 0;
  DefSubset region;
  Side side = Side::Right;
};

struct Branch {
  int from = 0;
  DefSubset domain;
  AffineMap map;
  int to = 0;
  Side side = Side::Right;
};

// A subset of a space, one DefSubset per track.
using TrackSet = std::map<int, DefSubset>;

TrackSet ts_union(const TrackSet& a, const TrackSet& b);
TrackSet ts_intersect(const TrackSet& a, const TrackSet& b);
TrackSet ts_minus(const TrackSet& a, const TrackSet& b);
bool ts_equal(const TrackSet& a, const TrackSet& b);
bool ts_empty(const TrackSet& a);
bool ts_subset(const TrackSet& a, const TrackSet& b);
bool ts_finite(const TrackSet& a);
bool ts_contains(const TrackSet& a, const Point& p);
std::vector<Point> ts_points(const TrackSet& a);  // finite sets only
std::string ts_str(const TrackSet& a);

class Space {
 public:
  std::string name;
  std::map<int, DefSubset> tracks;
  std::vector<SelfFlag> flags;
  std::vector<Branch> branches;

  void add_track(int id, const DefSubset& domain);
  void add_flag(int track, const DefSubset& region, Side side);
  void add_branch(int from, const DefSubset& domain, const AffineMap& map, int to, Side side);
  // same-track branches: fixed points become self-flags instead
  void add_branch_splitting(int from, const DefSubset& domain, const AffineMap& map, int to, Side side);

  // merge data per key and sort; drops empty data
  void canonicalize();
  // throws WellFormed
  void check_well_formed() const;

  const DefSubset& domain(int track) const;
  bool contains(const Point& p) const;
  TrackSet all() const { return tracks; }
  bool finite() const;
  bool bounded() const;
  int next_track_id() const { return tracks.empty() ? 0 : tracks.rbegin()->first + 1; }
};

// One accumulation generator on a refined cell: x -> (to, map(x), side).
struct Gen {
  int to = 0;
  AffineMap map;
  Side side = Side::Right;
  bool self = false;
  int datum = -1;  // index into flags (self) or branches
  friend bool operator==(const Gen& a, const Gen& b) {
    return a.to == b.to && a.map == b.map && a.side == b.side;
  }
};

struct RefCell {
  int track = 0;
  Cell cell;
  std::vector<Gen> gens;
};

// Cells on which every datum is either fully present or absent.
struct CellView {
  std::vector<RefCell> cells;
  const RefCell* locate(const Point& p) const;
};

CellView build_view(const Space& s, const std::map<int, std::vector<Rat>>& extra = {});
std::vector<Gen> gens_on(const Space& s, int track, const Cell& c);

// {x in C : some generator on C reproduces (t, f(x), side)}
DefSubset covered(const std::vector<Gen>& gens, const Cell& c, int t, const AffineMap& f, Side side);

std::set<Anchor> anchors(const Space& s, const Point& x);
std::set<ExtRat> e_set(const Space& s, const Point& x);
TrackSet basic_nbhd(const Space& s, const Point& x, const Rat& eps);

struct Violation {
  Point witness;
  RefCell where;
  Anchor anchor;
  std::string datum;
  std::string message;
};
std::vector<Violation> validate_topology(const Space& s);

TrackSet closure(const Space& s, const TrackSet& y);
TrackSet interior(const Space& s, const TrackSet& y);
TrackSet frontier(const Space& s, const TrackSet& y);
bool is_open(const Space& s, const TrackSet& y);
bool is_closed(const Space& s, const TrackSet& y);

struct HausdorffResult {
  bool ok = true;
  Point x, y;
  Anchor shared;
};
HausdorffResult is_hausdorff(const Space& s);

TrackSet isolated_points(const Space& s);
bool is_definably_separable(const Space& s);
int n_of_point(const Space& s, const Point& x);

Space push_forward(const Space& s, const std::map<int, AffineMap>& maps, const std::map<int, int>& perm = {});

}  // namespace omt
