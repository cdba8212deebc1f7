#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tdroute/faces.hpp"
#include "tdroute/geometry.hpp"
#include "tdroute/theta_graph.hpp"

namespace tdroute {

// Restricted access used by the per-vertex step rules: they may read the
// current vertex, its neighbors, and coordinates handed in explicitly.
// position() throws for anything else, so a rule cannot peek further out.
class NeighborhoodView {
 public:
  NeighborhoodView(const ThetaGraph& g, int32_t center) : g_(&g), center_(center) {}

  int32_t center() const { return center_; }
  Point center_pos() const { return g_->pts[center_]; }
  int k() const { return g_->spec.k; }
  std::span<const int32_t> neighbors() const { return g_->neighbors(center_); }
  int32_t successor(int cone) const { return g_->successor_of(center_, cone); }

  // Coordinates of the center or one of its neighbors; anything else is a
  // ContractViolation.
  Point position(int32_t v) const;

 private:
  const ThetaGraph* g_;
  int32_t center_;
};

enum class StepTag : uint8_t { forward, side, theta, bose_negative };
enum class RouteStatus : uint8_t { arrived, loop_detected, dead_end, step_limit, left_window };

const char* to_string(StepTag t);
const char* to_string(RouteStatus s);

enum class Algorithm : uint8_t {
  theta_k,
  positive,
  memoryless_negative,
  constmem_negative,
  bose_negative,
  theta6_auto,
};

const char* to_string(Algorithm a);
// Accepts the names printed by to_string; returns false on anything else.
bool parse_algorithm(const std::string& name, Algorithm& out);

// One edge of a walk plus everything needed to audit it afterwards: the
// rule that fired, the cone or guide line it used, and the regions whose
// emptiness the decision relied on.
struct StepRecord {
  int32_t from = -1;
  int32_t to = -1;
  StepTag tag = StepTag::forward;
  // Rule identifiers: 1..4 negative rules (4 covers both edge choices),
  // 5 bose both-empty side, 10 positive forward phase, 11 positive side
  // phase, 12 target shortcut inside a side walk.
  int rule_case = 0;
  int cone = -1;               // cone stepped along, for successor steps
  bool has_line = false;       // side steps carry the guide line
  OrientedConeLine line{};
  int travel_sign = 0;         // +1 along line.direction(), -1 against
  std::array<int32_t, 3> corridor_face{{-1, -1, -1}};  // face walked through
  // Canonical triangles whose emptiness the step consulted. If any of them
  // leaves the sampling window, the step is not trustworthy there.
  std::vector<CanonicalTriangle> consulted;
  // A successor the rule needed was absent, which near a window boundary
  // means the decision may differ from the unbounded one.
  bool consulted_absent = false;
};

struct RouteTrace {
  int32_t s = -1;
  int32_t t = -1;
  std::vector<int32_t> vertices;  // s first; one entry per visited vertex
  std::vector<StepRecord> steps;  // vertices.size() - 1 when nonempty
  RouteStatus status = RouteStatus::arrived;
  double length = 0.0;  // sum of step lengths
  double ratio = 1.0;   // length / |st|, defined as 1 when s == t
  int32_t split_point = -1;  // vertex where the first side step started, -1 if none
};

struct RouteOptions {
  int max_steps = 0;  // 0 picks 100 + 10 * n
  // Faces of the matching half graph. Supplying them avoids a rebuild per
  // call; when absent the driver derives what it needs from the graph.
  const FaceList* even_faces = nullptr;
  const FaceList* odd_faces = nullptr;
};

// Successor of the view's center in the cone of t; -1 when that cone is
// empty.
int32_t theta_step(const NeighborhoodView& view, Point t);

// Successor in a fixed cone; -1 when empty.
int32_t forward_step(const NeighborhoodView& view, int cone);

struct SideStepResult {
  int32_t next = -1;
  bool exhausted = false;  // corridor ended at the hull before the goal
  bool shortcut = false;   // stepped straight to t past the pinch at t
  std::array<int32_t, 3> face{{-1, -1, -1}};
};

// Pinch test at the goal: t sits on the line ahead of v within the
// corridor wedge and shares a half edge with v, so no crossing face
// continues past it and the walk may step straight to t.
bool side_walk_pinch(const ThetaGraph& g, int parity, int32_t v, const OrientedConeLine& line,
                     int travel_sign, int32_t t);

// One step of the corridor walk along line, moving with travel_sign. The
// walk stays on the closed positive side (flipped for odd-parity faces),
// crossing one incident face per step. t enables the arrival shortcut when
// it sits on the line; pass -1 to disable it.
SideStepResult side_step(const ThetaGraph& g, const FaceList& faces, int32_t v,
                         const OrientedConeLine& line, int travel_sign, int32_t t);

RouteTrace theta_route(const ThetaGraph& g, int32_t s, int32_t t, const RouteOptions& opts = {});
// Requires t in an even cone of s.
RouteTrace positive_route(const ThetaGraph& g, int32_t s, int32_t t, const RouteOptions& opts = {});
RouteTrace memoryless_negative_route(const ThetaGraph& g, int32_t s, int32_t t,
                                     const RouteOptions& opts = {});
RouteTrace constmem_negative_route(const ThetaGraph& g, int32_t s, int32_t t,
                                   const RouteOptions& opts = {});
RouteTrace bose_negative_route(const ThetaGraph& g, int32_t s, int32_t t,
                               const RouteOptions& opts = {});
// Dispatches on the parity of the cone of t at s: even runs positive_route,
// odd runs its mirror on the odd half. Requires a full graph with k = 6.
RouteTrace theta6_auto_route(const ThetaGraph& g, int32_t s, int32_t t,
                             const RouteOptions& opts = {});

RouteTrace route(Algorithm alg, const ThetaGraph& g, int32_t s, int32_t t,
                 const RouteOptions& opts = {});

}  // namespace tdroute
