#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tdroute/faces.hpp"
#include "tdroute/routing.hpp"
#include "tdroute/theta_graph.hpp"

namespace tdroute {

struct ShortestPathResult {
  double length = 0.0;
  std::vector<int32_t> path;  // s..t inclusive; empty when unreachable
  bool reachable = false;
};

// Euclidean shortest path between two vertices. s == t yields length 0 and
// the one-vertex path.
ShortestPathResult shortest_path(const ThetaGraph& g, int32_t s, int32_t t);

struct SpanningRatioResult {
  double max_ratio = 0.0;
  int checked = 0;      // pairs with a path, contributing to the max
  int unreachable = 0;  // pairs without one, excluded from the max
  std::pair<int32_t, int32_t> argmax{-1, -1};
};

// Largest shortest-path stretch over the given pairs. Pairs with no path
// are counted separately and never fold into the max.
SpanningRatioResult spanning_ratio(const ThetaGraph& g,
                                   std::span<const std::pair<int32_t, int32_t>> pairs);

// Positive-side boundary of the chain of faces crossing the line between s
// and t, computed by walking face to face across crossing edges. Both
// endpoints must lie on the closed positive side and touch the chain;
// throws ContractViolation when the chain does not join them.
std::vector<int32_t> corridor_boundary(const ThetaGraph& g, const FaceList& faces, int32_t s,
                                       int32_t t, const OrientedConeLine& line);

struct TraceCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct TraceReport {
  std::vector<TraceCheck> checks;
  bool all_pass() const {
    for (const TraceCheck& c : checks) {
      if (!c.pass) return false;
    }
    return true;
  }
  const TraceCheck* first_failure() const {
    for (const TraceCheck& c : checks) {
      if (!c.pass) return &c;
    }
    return nullptr;
  }
};

// Recomputes everything an arrived trace claims: edges exist, recorded
// length and ratio match the vertex sequence, the ratio stays within
// bound, no phase run exceeds its geometric budget, side runs avoid the
// edge family parallel to their guide line, and the walk is no shorter
// than the true shortest path. Requires trace.status == arrived.
TraceReport certify_trace(const RouteTrace& trace, const ThetaGraph& g, double bound);

}  // namespace tdroute
