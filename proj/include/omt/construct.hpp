#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omt/classify.hpp"
#include "omt/curves.hpp"
#include "omt/space.hpp"

namespace omt {

// A refinement in which every non-constant generator maps its cell onto a
// whole cell and every point anchor sits on a cell end. Interval cells linked
// by generators form blocks; inside a block each cell is f(base) for an
// affine bijection f.
struct BlockCell {
  int cell = 0;  // index into view.cells
  AffineMap from_base;
};

struct T3View {
  CellView view;
  std::vector<std::vector<BlockCell>> blocks;
  std::vector<int> block_of;  // -1 for point cells
};

T3View t3_refine(const Space& s, std::map<int, std::vector<Rat>> extra = {});

int find_cell(const CellView& v, int track, const Cell& c);
// interval cell whose end carries the germ, or -1 when the germ is empty
int germ_cell(const CellView& v, const Anchor& a);
// cell hit by a non-constant generator on an interval cell, -1 if it misses the domain
int image_cell(const Space& s, const CellView& v, const RefCell& rc, const Gen& g);

struct Level {
  int track = 0;
  Cell cell;
  AffineMap from_base;  // f_i : I -> cell
};

struct SimFamily {
  std::vector<Level> levels;  // levels[0] is the base, from_base = identity
  std::vector<Point> members(const Rat& x) const;
};

struct SimClasses {
  std::vector<SimFamily> families;
  std::vector<Point> exceptional;  // finite, removed from the core
  TrackSet core;
};

SimClasses sim_classes(const Space& s);
std::vector<Point> sim_class(const Space& s, const Point& x);

enum class CaseTag { Case0, Case1, Case2, Case3, Case4, Case5 };
const char* case_name(CaseTag c);

struct OpenPiece {
  std::vector<Level> levels;   // f_0 .. f_{n-1}
  CaseTag tag = CaseTag::Case0;
  std::string e_pattern;       // "empty", "{x}" or "{x,f(x)}"
  std::string side_condition;  // "none", "L\\R", "R\\L" or "R&L"
  int base_track() const { return levels.front().track; }
  const Cell& base() const { return levels.front().cell; }
  TrackSet points() const;
};

struct OpenPartition {
  std::vector<Point> singletons;
  std::vector<OpenPiece> pieces;
};

OpenPartition open_partition(const Space& s);

enum class TargetKind { Lex, Alexandrov };
const char* target_name(TargetKind k);

// lex: track 0 is the bottom, track m the top; alexandrov: track 0 carries both sides
Space lex_space(const Cell& base, int m);
Space alexandrov_space(const Cell& base, int n);

struct PieceEmbedding {
  Space target;
  TargetKind kind = TargetKind::Lex;
  int top = 0;              // target levels are 0..top
  std::vector<int> level;   // level[i] receives f_i(I)
  PiecewiseMap h;
  bool bijective = false;
};

PieceEmbedding embed_piece(const OpenPiece& piece);

struct EmbeddingReport {
  TrackSet Y, Z;
  int n_Y = 0, n_Z = 0;
  Space lex, alex;
  PiecewiseMap h_Y, h_Z;
  std::vector<OpenPiece> pieces;
  std::vector<PieceEmbedding> embeddings;
  std::vector<Point> leftover;
};

EmbeddingReport decompose_T3(const Space& s);

struct LexEmbedding {
  TrackSet Y;
  Space target;
  PiecewiseMap h;
  std::vector<Point> leftover;
};
LexEmbedding embed_separable_lex(const Space& s);

struct Compactification {
  Space space;
  PiecewiseMap embedding;
  std::optional<Point> added;   // the one-point step, if it fired
  int added_points = 0;         // isolated points of the output outside the image
};

Compactification one_point_compactify(const Space& s);
Compactification compactify(const Space& s);

PiecewiseMap identity_map(const Space& s);

struct Separation {
  TrackSet U, V;
};
Separation separate_closed_sets(const Space& s, const TrackSet& B, const TrackSet& C);

}  // namespace omt
