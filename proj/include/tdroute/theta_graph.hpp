#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tdroute/geometry.hpp"

namespace tdroute {

// theta: successors in all k cones of every vertex.
// half_even / half_odd: k must be 6; successors only in the even or odd
// cones. Each half of the cone-6 graph is plane; the full one is not.
enum class GraphKind { theta, half_even, half_odd };

struct GraphSpec {
  GraphKind kind = GraphKind::theta;
  int k = 6;
};

inline bool cone_active(const GraphSpec& spec, int cone) {
  switch (spec.kind) {
    case GraphKind::theta: return true;
    case GraphKind::half_even: return cone % 2 == 0;
    case GraphKind::half_odd: return cone % 2 == 1;
  }
  return false;
}

struct ThetaGraph {
  GraphSpec spec;
  std::vector<Point> pts;

  // successor[v * k + c]: the cone-c successor of v, or -1 when the cone
  // is empty or inactive for this kind. The successor of v in cone c is
  // the point of the cone minimizing (bisector projection, x, y).
  std::vector<int32_t> successor;

  // Undirected adjacency in CSR form. Each vertex's neighbors are sorted
  // counterclockwise by direction, starting at direction (1, 0).
  std::vector<int32_t> adj_start;
  std::vector<int32_t> adj;

  int n() const { return static_cast<int>(pts.size()); }
  int edge_count() const { return static_cast<int>(adj.size()) / 2; }

  int32_t successor_of(int v, int cone) const { return successor[v * spec.k + cone]; }

  std::span<const int32_t> neighbors(int v) const {
    return {adj.data() + adj_start[v], adj.data() + adj_start[v + 1]};
  }

  bool has_edge(int u, int v) const {
    for (int32_t w : neighbors(u)) {
      if (w == v) return true;
    }
    return false;
  }
};

// Builds the graph for the given sites. Throws DegenerateInput on
// duplicate sites, ContractViolation when spec.k < 2 or a half kind is
// asked for with k != 6.
ThetaGraph build_theta_graph(std::vector<Point> pts, GraphSpec spec = {});

// Copies one parity's successors out of a built full graph (k = 6) and
// rebuilds the adjacency, avoiding a fresh cone search.
ThetaGraph half_graph(const ThetaGraph& full, int parity);

// Whether (u, v) is an edge of the given half. Exactly one direction of a
// pair can define a half edge, the one whose cone parity matches. Works on
// the full graph and on the matching half graph.
bool half_edge(const ThetaGraph& g, int32_t u, int32_t v, int parity);

// Reassembles a graph from a stored successor table without a cone
// search; adjacency is the undirected collapse of the table. Sites and
// table shape are validated, geometric truth is not, that is what
// certify_empty_triangle is for.
ThetaGraph graph_from_successors(std::vector<Point> pts, GraphSpec spec,
                                 std::vector<int32_t> successor);

// Monotone order on candidates within one cone; the successor is the
// minimum. Exposed so independent checkers can reproduce the tie-break.
inline bool successor_less(Point apex, Point a, Point b, int cone, int k) {
  const Vec2 bis = cone_bisector(cone, k);
  const double pa = dot(a - apex, bis);
  const double pb = dot(b - apex, bis);
  if (pa != pb) return pa < pb;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

struct EmptyTriangleViolation {
  int32_t vertex = -1;
  int cone = -1;
  int32_t witness = -1;  // site strictly inside the open canonical triangle
};

// Checks that every successor edge's canonical triangle has no site
// strictly inside. Holds by construction; this re-derives it from the
// stored graph alone, so a corrupted graph fails.
std::optional<EmptyTriangleViolation> certify_empty_triangle(const ThetaGraph& g);

// True when the union of the two half graphs' edge sets equals the full
// graph's edge set. All three must be built over the same sites.
bool union_is_full_graph(const ThetaGraph& even, const ThetaGraph& odd,
                         const ThetaGraph& full);

}  // namespace tdroute
