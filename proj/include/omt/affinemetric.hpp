#pragma once

#include <optional>
#include <string>
#include <vector>

#include "omt/classify.hpp"
#include "omt/construct.hpp"

namespace omt {

struct GraphVertex {
  enum Kind { PointV, OpenEnd } kind = PointV;
  Point point;  // PointV only
};

struct GraphEdge {
  int track = 0;
  Cell cell;
  std::optional<Rat> length;  // absent for unbounded cells
  int a = -1, b = -1;         // vertices at cell.lo and cell.hi
};

struct GluingGraph {
  std::vector<GraphVertex> vertices;
  std::vector<GraphEdge> edges;
  std::string str() const;
};

// cell-wise euclidean part of a Hausdorff space; open ends stay separate
GluingGraph gluing_graph(const Space& s);
// the same graph with every open end glued to one added vertex
GluingGraph compactified(const GluingGraph& g);

struct AffineResult {
  bool affine = true;
  GluingGraph graph;
  std::optional<Piece> witness;
};
AffineResult is_affine(const Space& s);

// d(p,q) = rho(p) + rho(q) + d_graph(root(p), root(q)) with clopen discrete pieces at distance 1
struct MetricPiece {
  enum Kind { Edge, Vertex, Clopen, Spike } kind = Edge;
  int track = 0;
  Cell cell;
  int edge = -1;    // Edge
  int vertex = -1;  // Vertex, Spike root
  Rat apex;         // Spike: distance from x is |x - apex|
};

struct MetricExpr {
  GluingGraph graph;
  std::vector<MetricPiece> pieces;
  std::vector<std::vector<std::optional<Rat>>> vdist;  // shortest paths between vertices
  Rat apart;  // distance between points of different graph components
  bool capped = false;
  std::string str() const;
};

MetricExpr synthesize_metric(const Space& s);
Rat eval_metric(const MetricExpr& m, const Point& p, const Point& q);

struct TwoToOne {
  Space target;
  GluingGraph graph;
  PiecewiseMap map;
  int max_fiber = 0;
};
TwoToOne two_to_one_euclidean(const Space& s);

}  // namespace omt
