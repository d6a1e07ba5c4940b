#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "omt/space.hpp"

namespace omt {

struct Curve {
  ExtRat a, b;  // domain (a,b)
  bool end_at_a = true;
  int track = 0;
  PLMap map;

  ExtRat end() const { return end_at_a ? a : b; }
  std::string str() const;
  static Curve parse(const std::string& text);
};

// t -> v + t on (0,1) toward 0, mirrored for Left; +-inf germs use the identity
Curve germ_curve(const Anchor& germ);
Curve stationary_curve(const Point& p);
Curve affine_curve(int track, const AffineMap& m, const ExtRat& a, const ExtRat& b, bool end_at_a);

enum class LimitSide { Right, Left, Stationary };
const char* limit_side_name(LimitSide s);

struct ELimit {
  ExtRat value;
  LimitSide side;
  friend bool operator==(const ELimit&, const ELimit&) = default;
};

// nullopt when the curve's map is undefined near its end
std::optional<ELimit> e_limit_side(const Curve& g);

// points a germ converges to; can be infinite in non-Hausdorff spaces
TrackSet claimants(const Space& s, const Anchor& germ);
TrackSet tau_limit(const Space& s, const Curve& g);
bool curves_equivalent(const Curve& g, const Curve& h);

// x on (track, src cell) goes to (dst_track, map(x))
struct Assignment {
  int src_track = 0;
  Cell src;
  AffineMap map;
  int dst_track = 0;
};
using PiecewiseMap = std::vector<Assignment>;

std::optional<Point> apply(const PiecewiseMap& h, const Point& x);
// inverse on the image; constant pieces over intervals are rejected
PiecewiseMap invert(const PiecewiseMap& h);
TrackSet image_set(const PiecewiseMap& h);
TrackSet domain_set(const PiecewiseMap& h);
std::string map_str(const PiecewiseMap& h);

struct ContinuityResult {
  bool ok = true;
  Point at;
  Curve witness;
  std::string message;
};

// Every curve class converging to x maps to a class converging to h(x).
// With subspace=true, h only needs to be defined on a subspace of src and
// germs leaving that subspace are ignored.
ContinuityResult continuity_check(const Space& src, const Space& dst, const PiecewiseMap& h, bool subspace = false,
                                  std::optional<Point> at = std::nullopt);

// h continuous on its domain and h^-1 continuous on the image
ContinuityResult embedding_check(const Space& src, const Space& dst, const PiecewiseMap& h);

Curve random_curve(const Space& s, std::mt19937_64& rng);
bool compactness_by_curves(const Space& s, int n_samples, std::uint64_t seed = 1);

}  // namespace omt
