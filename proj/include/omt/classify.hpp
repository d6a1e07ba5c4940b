#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "omt/curves.hpp"
#include "omt/space.hpp"

namespace omt {

enum class PieceLabel { Euclidean, RightHalfOpen, LeftHalfOpen, Discrete };
const char* label_name(PieceLabel l);
PieceLabel label_of(const std::vector<Gen>& gens);

struct Piece {
  int track = 0;
  Cell cell;
  PieceLabel label = PieceLabel::Discrete;
};

struct Decomposition {
  std::vector<Piece> pieces;
  std::vector<Point> leftover;
};

// Cells on which the data, the crossings of generators with a common
// target and the position of every generator value relative to the cell
// are constant; in Hausdorff spaces E_x meets cl_e(cell) at most in x.
CellView refine_canonical(const Space& s);

std::map<PieceLabel, TrackSet> classify_points(const Space& s);
Decomposition decompose_T2(const Space& s);
Piece tame_interval_T1(const Space& s);

struct RegularResult {
  bool ok = true;
  Point witness;
  Anchor anchor;
  Anchor missing;
  std::string datum;
};
RegularResult is_regular(const Space& s);  // throws NotHausdorff
bool regular_predicate(const Space& s);    // false for non-Hausdorff input

// side-approach values of each track not claimed by any anchor
struct Uncovered {
  int track;
  Side side;
  ValueSet values;
};
std::vector<Uncovered> uncovered_germs(const Space& s);
ValueSet anchored_values(const Space& s, int track, Side side);

struct CompactResult {
  bool ok = true;
  Anchor germ;
  Curve witness;
};
CompactResult is_definably_compact(const Space& s);
bool is_near_compact(const Space& s);

struct FdiResult {
  bool ok = true;
  TrackSet witness;
  TrackSet witness_frontier;
};
FdiResult fdi_check(const Space& s);

enum class WeightClass { DensityWeight, CardinalityWeight, Finite };
const char* weight_name(WeightClass w);
WeightClass weight_class(const Space& s);

struct Components {
  std::vector<TrackSet> parts;  // components with more than one point
  TrackSet singletons;          // every point here is its own component
};
Components connected_components(const Space& s);

}  // namespace omt
