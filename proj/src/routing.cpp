#include "tdroute/routing.hpp"

#include <cmath>
#include <optional>
#include <unordered_set>

namespace tdroute {

namespace {

int resolve_max_steps(const RouteOptions& opts, int n) {
  return opts.max_steps > 0 ? opts.max_steps : 100 + 10 * n;
}

void check_pair(const ThetaGraph& g, int32_t s, int32_t t) {
  if (s < 0 || s >= g.n() || t < 0 || t >= g.n()) {
    throw ContractViolation("route: vertex out of range");
  }
}

void require_even6(const ThetaGraph& g) {
  if (g.spec.k != 6) throw ContractViolation("route: k must be 6 for this algorithm");
  if (g.spec.kind == GraphKind::half_odd) {
    throw ContractViolation("route: graph lacks even-cone successors");
  }
}

// The defining successor relation of a half edge runs in the cone whose
// parity matches the half.
CanonicalTriangle edge_triangle(const ThetaGraph& g, int32_t x, int32_t y, int parity) {
  const int c = cone_index(g.pts[x], g.pts[y], 6);
  if (c % 2 == parity) return canonical_triangle(g.pts[x], g.pts[y], 6);
  return canonical_triangle(g.pts[y], g.pts[x], 6);
}

void push_step(RouteTrace& tr, const ThetaGraph& g, StepRecord rec) {
  tr.length += dist(g.pts[rec.from], g.pts[rec.to]);
  tr.vertices.push_back(rec.to);
  tr.steps.push_back(std::move(rec));
}

void finish(RouteTrace& tr, const ThetaGraph& g, RouteStatus status) {
  tr.status = status;
  if (tr.split_point < 0) {
    for (const StepRecord& rec : tr.steps) {
      if (rec.tag == StepTag::side) {
        tr.split_point = rec.from;
        break;
      }
    }
  }
  if (tr.s != tr.t) tr.ratio = tr.length / dist(g.pts[tr.s], g.pts[tr.t]);
}

// Owns whatever had to be derived when prebuilt faces were not supplied.
struct FacesHolder {
  ThetaGraph half;
  FaceList owned;
  const FaceList* faces = nullptr;
};

FacesHolder obtain_faces(const ThetaGraph& g, int parity, const RouteOptions& opts) {
  FacesHolder h;
  const FaceList* given = parity == 0 ? opts.even_faces : opts.odd_faces;
  if (given) {
    if (given->parity != parity) {
      throw ContractViolation("route: supplied faces have the wrong parity");
    }
    h.faces = given;
    return h;
  }
  if (g.spec.kind == GraphKind::theta) {
    h.half = half_graph(g, parity);
    h.owned = extract_faces(h.half);
  } else {
    h.owned = extract_faces(g);
    if (h.owned.parity != parity) {
      throw ContractViolation("route: graph parity does not match the algorithm");
    }
  }
  h.faces = &h.owned;
  return h;
}

}  // namespace

Point NeighborhoodView::position(int32_t v) const {
  if (v == center_) return g_->pts[v];
  for (int32_t u : neighbors()) {
    if (u == v) return g_->pts[v];
  }
  throw ContractViolation("NeighborhoodView: vertex outside the neighborhood");
}

const char* to_string(StepTag t) {
  switch (t) {
    case StepTag::forward: return "forward";
    case StepTag::side: return "side";
    case StepTag::theta: return "theta";
    case StepTag::bose_negative: return "bose-negative";
  }
  return "?";
}

const char* to_string(RouteStatus s) {
  switch (s) {
    case RouteStatus::arrived: return "arrived";
    case RouteStatus::loop_detected: return "loop-detected";
    case RouteStatus::dead_end: return "dead-end";
    case RouteStatus::step_limit: return "step-limit";
    case RouteStatus::left_window: return "left-window";
  }
  return "?";
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::theta_k: return "theta-k";
    case Algorithm::positive: return "positive";
    case Algorithm::memoryless_negative: return "memoryless-negative";
    case Algorithm::constmem_negative: return "constmem-negative";
    case Algorithm::bose_negative: return "bose-negative";
    case Algorithm::theta6_auto: return "theta6-auto";
  }
  return "?";
}

bool parse_algorithm(const std::string& name, Algorithm& out) {
  for (Algorithm a : {Algorithm::theta_k, Algorithm::positive, Algorithm::memoryless_negative,
                      Algorithm::constmem_negative, Algorithm::bose_negative,
                      Algorithm::theta6_auto}) {
    if (name == to_string(a)) {
      out = a;
      return true;
    }
  }
  return false;
}

int32_t theta_step(const NeighborhoodView& view, Point t) {
  return view.successor(cone_index(view.center_pos(), t, view.k()));
}

int32_t forward_step(const NeighborhoodView& view, int cone) { return view.successor(cone); }

bool side_walk_pinch(const ThetaGraph& g, int parity, int32_t v, const OrientedConeLine& line,
                     int travel_sign, int32_t t) {
  if (t < 0 || t == v) return false;
  const double flip = parity == 1 ? -1.0 : 1.0;
  const Vec2 along = line.direction() * static_cast<double>(travel_sign);
  auto offset_of = [&](Point w) { return flip * line.offset(w); };
  auto coord_of = [&](Point w) { return dot(w - line.anchor, along); };
  const Point vp = g.pts[v], tp = g.pts[t];
  const double ct = coord_of(tp), cv = coord_of(vp);
  return std::abs(offset_of(tp)) <= 1e-9 && ct >= cv - 1e-9 &&
         std::abs(offset_of(vp) - offset_of(tp)) <= kSqrt3 * (ct - cv) + 1e-9 &&
         half_edge(g, v, t, parity);
}

SideStepResult side_step(const ThetaGraph& g, const FaceList& faces, int32_t v,
                         const OrientedConeLine& line, int travel_sign, int32_t t) {
  if (faces.parity != 0 && faces.parity != 1) {
    throw ContractViolation("side_step: faces must come from a half graph");
  }
  if (travel_sign != 1 && travel_sign != -1) {
    throw ContractViolation("side_step: travel_sign must be +1 or -1");
  }
  const double flip = faces.parity == 1 ? -1.0 : 1.0;
  const Vec2 along = line.direction() * static_cast<double>(travel_sign);
  auto offset_of = [&](Point w) { return flip * line.offset(w); };
  auto coord_of = [&](Point w) { return dot(w - line.anchor, along); };

  SideStepResult out;

  if (side_walk_pinch(g, faces.parity, v, line, travel_sign, t)) {
    out.next = t;
    out.shortcut = true;
    return out;
  }

  // The exit of a face is its line-crossing edge with the largest travel
  // coordinate; the walk leaves the face holding the farthest such exit.
  int32_t best_face = -1;
  double best_coord = 0.0;
  int32_t best_below = -1;
  for (int32_t f : faces.faces_at(v)) {
    const auto verts = faces.face(f);
    const size_t m = verts.size();
    bool crossing = false;
    double face_coord = 0.0;
    int32_t face_below = -1;
    for (size_t e = 0; e < m; ++e) {
      const int32_t x = verts[e], y = verts[(e + 1) % m];
      const double ox = offset_of(g.pts[x]), oy = offset_of(g.pts[y]);
      int32_t lo, hi;
      double olo, ohi;
      if (ox < 0.0 && oy >= 0.0) {
        lo = x; hi = y; olo = ox; ohi = oy;
      } else if (oy < 0.0 && ox >= 0.0) {
        lo = y; hi = x; olo = oy; ohi = ox;
      } else {
        continue;
      }
      const Point at = g.pts[lo] + (g.pts[hi] - g.pts[lo]) * (-olo / (ohi - olo));
      const double cc = coord_of(at);
      if (!crossing || cc > face_coord) {
        crossing = true;
        face_coord = cc;
        face_below = hi;
      }
    }
    if (!crossing) continue;
    if (best_face < 0 || face_coord >= best_coord) {
      best_face = f;
      best_coord = face_coord;
      best_below = face_below;
    }
  }
  if (best_face < 0 || best_below == v) {
    // Nothing crosses here, or the farthest exit is a hull edge ending at
    // v itself: the corridor leaves the graph before the goal.
    out.exhausted = true;
    return out;
  }
  out.next = best_below;
  const auto verts = faces.face(best_face);
  for (size_t i = 0; i < verts.size() && i < 3; ++i) out.face[i] = verts[i];
  return out;
}

namespace {

// Guide line for the remembered-source side phase: both canonical
// triangles of the pair are cut by each other's cone rays, and the walk
// follows the source ray through the crossing nearest the source. On the
// symmetric tie the ray toward the clockwise side of the goal triangle
// wins.
OrientedConeLine constmem_guide_line(Point sp, Point tp) {
  const int is = cone_index(sp, tp, 6);
  const int jt = cone_index(tp, sp, 6);
  const int sdirs[2] = {(is + 1) % 6, (is + 2) % 6};
  const int tdirs[2] = {(jt + 1) % 6, (jt + 2) % 6};
  const Vec2 w = tp - sp;
  double best = -1.0;
  int best_rank = 9;
  int best_dir = -1;
  for (int a = 0; a < 2; ++a) {
    const Vec2 u1 = unit_from_angle(sdirs[a] * kPi / 3.0);
    for (int b = 0; b < 2; ++b) {
      const Vec2 u2 = unit_from_angle(tdirs[b] * kPi / 3.0);
      const double den = cross(u1, u2);
      if (std::abs(den) < 1e-12) continue;
      const double alpha = cross(w, u2) / den;
      const double beta = cross(w, u1) / den;
      if (alpha < -1e-9 || beta < -1e-9) continue;
      const int rank = b;  // tdirs[0] is the clockwise ray of the goal cone
      if (best < 0.0 || alpha < best - 1e-9 || (alpha < best + 1e-9 && rank < best_rank)) {
        best = alpha;
        best_rank = rank;
        best_dir = sdirs[a];
      }
    }
  }
  if (best_dir < 0 || best < 1e-12) {
    throw ContractViolation("constmem: guide line construction degenerate");
  }
  return OrientedConeLine{sp, best_dir};
}

enum class LadderKind { memoryless, constmem, bose };

struct StepOutcome {
  StepRecord rec;
  bool dead_end = false;
  bool exhausted = false;
};

// One evaluation of the negative-pair rule ladder at u. The even-cone rule
// always comes first; the rest differ per variant as documented in the
// header's rule_case table.
StepOutcome ladder_step(const ThetaGraph& g, const FaceList& faces, int32_t u, int32_t t,
                        LadderKind kind, std::optional<OrientedConeLine>& guide, int32_t s_orig) {
  StepOutcome o;
  StepRecord& rec = o.rec;
  rec.from = u;
  const Point up = g.pts[u];
  const Point tp = g.pts[t];
  NeighborhoodView view(g, u);
  const int i = cone_index(up, tp, 6);
  if (i % 2 == 0) {
    rec.tag = StepTag::forward;
    rec.rule_case = 1;
    rec.cone = i;
    const int32_t nxt = forward_step(view, i);
    if (nxt < 0) {
      rec.consulted_absent = true;
      o.dead_end = true;
      return o;
    }
    rec.to = nxt;
    rec.consulted.push_back(canonical_triangle(up, view.position(nxt), 6));
    return o;
  }

  const int j = cone_index(tp, up, 6);
  const CanonicalTriangle goal_tri = canonical_triangle(tp, up, 6);
  const int ca = (i + 5) % 6;
  const int cb = (i + 1) % 6;
  const int32_t a = view.successor(ca);
  const int32_t b = view.successor(cb);
  const OrientedConeLine line_a{tp, (j + 2) % 6};
  const OrientedConeLine line_b{tp, (j + 1) % 6};
  const double da = std::abs(line_a.offset(up));
  const double db = std::abs(line_b.offset(up));

  auto consult = [&](int32_t x) {
    if (x >= 0) rec.consulted.push_back(canonical_triangle(up, view.position(x), 6));
    else rec.consulted_absent = true;
  };
  auto side_along = [&](const OrientedConeLine& ln, int rule, int forced_sign) {
    const int sign =
        forced_sign != 0 ? forced_sign : (dot(ln.direction(), tp - up) >= 0.0 ? 1 : -1);
    const SideStepResult sr = side_step(g, faces, u, ln, sign, t);
    rec.tag = StepTag::side;
    rec.rule_case = rule;
    rec.has_line = true;
    rec.line = ln;
    rec.travel_sign = sign;
    if (sr.exhausted) {
      o.exhausted = true;
      return;
    }
    rec.to = sr.next;
    rec.corridor_face = sr.face;
    rec.consulted.push_back(edge_triangle(g, u, sr.next, 0));
  };

  if (kind == LadderKind::bose) {
    consult(a);
    consult(b);
    const bool in_a = a >= 0 && goal_tri.contains(view.position(a), true);
    const bool in_b = b >= 0 && goal_tri.contains(view.position(b), true);
    if (in_a && in_b) {
      rec.tag = StepTag::bose_negative;
      rec.rule_case = 4;
      rec.cone = da < db ? ca : cb;
      rec.to = da < db ? a : b;
      return o;
    }
    if (!in_a && !in_b) {
      side_along(da > db ? line_a : line_b, 5, 0);
      return o;
    }
    if (!in_a) side_along(line_a, 2, 0);
    else side_along(line_b, 3, 0);
    return o;
  }

  consult(a);
  if (a >= 0 && !goal_tri.contains(view.position(a), true)) {
    side_along(line_a, 2, 0);
    return o;
  }
  consult(b);
  if (b >= 0 && !goal_tri.contains(view.position(b), true)) {
    side_along(line_b, 3, 0);
    return o;
  }
  if (a < 0 || b < 0) {
    o.dead_end = true;
    return o;
  }
  if (kind == LadderKind::constmem) {
    if (!guide) guide = constmem_guide_line(g.pts[s_orig], tp);
    side_along(*guide, 4, 1);
    return o;
  }
  rec.tag = StepTag::forward;
  rec.rule_case = 4;
  rec.cone = da < db ? ca : cb;
  rec.to = da < db ? a : b;
  return o;
}

RouteTrace ladder_route(const ThetaGraph& g, int32_t s, int32_t t, const RouteOptions& opts,
                        LadderKind kind) {
  check_pair(g, s, t);
  require_even6(g);
  RouteTrace tr;
  tr.s = s;
  tr.t = t;
  tr.vertices.push_back(s);
  if (s == t) return tr;
  const FacesHolder fh = obtain_faces(g, 0, opts);
  const int limit = resolve_max_steps(opts, g.n());
  std::optional<OrientedConeLine> guide;
  std::unordered_set<int32_t> seen{s};
  int32_t u = s;
  while (true) {
    if (static_cast<int>(tr.steps.size()) >= limit) {
      finish(tr, g, RouteStatus::step_limit);
      return tr;
    }
    StepOutcome o = ladder_step(g, *fh.faces, u, t, kind, guide, s);
    if (o.dead_end) {
      finish(tr, g, RouteStatus::dead_end);
      return tr;
    }
    if (o.exhausted) {
      finish(tr, g, RouteStatus::left_window);
      return tr;
    }
    u = o.rec.to;
    push_step(tr, g, std::move(o.rec));
    if (u == t) {
      finish(tr, g, RouteStatus::arrived);
      return tr;
    }
    if (!seen.insert(u).second) {
      finish(tr, g, RouteStatus::loop_detected);
      return tr;
    }
  }
}

// Forward phase in the fixed start cone while the walker stays in the
// goal's opposite cone, then a corridor walk along the crossed cone
// boundary. parity selects the half whose successors and faces drive it.
RouteTrace positive_impl(const ThetaGraph& g, const FaceList& faces, int parity, int32_t s,
                         int32_t t, const RouteOptions& opts) {
  check_pair(g, s, t);
  if (faces.parity != parity) throw ContractViolation("route: faces parity mismatch");
  RouteTrace tr;
  tr.s = s;
  tr.t = t;
  tr.vertices.push_back(s);
  if (s == t) return tr;
  const Point sp = g.pts[s], tp = g.pts[t];
  const int c = cone_index(sp, tp, 6);
  if (c % 2 != parity) {
    throw ContractViolation("positive_route: goal cone parity does not match");
  }
  const int j = cone_index(tp, sp, 6);
  const int limit = resolve_max_steps(opts, g.n());
  std::unordered_set<int64_t> seen{int64_t(s) * 2};
  int32_t u = s;
  while (cone_contains_closed(tp, g.pts[u], j, 6)) {
    if (static_cast<int>(tr.steps.size()) >= limit) {
      finish(tr, g, RouteStatus::step_limit);
      return tr;
    }
    NeighborhoodView view(g, u);
    const int32_t nxt = forward_step(view, c);
    if (nxt < 0) {
      finish(tr, g, RouteStatus::left_window);
      return tr;
    }
    StepRecord rec;
    rec.from = u;
    rec.to = nxt;
    rec.tag = StepTag::forward;
    rec.rule_case = 10;
    rec.cone = c;
    rec.consulted.push_back(canonical_triangle(g.pts[u], g.pts[nxt], 6));
    push_step(tr, g, std::move(rec));
    u = nxt;
    if (u == t) {
      finish(tr, g, RouteStatus::arrived);
      return tr;
    }
    if (!seen.insert(int64_t(u) * 2).second) {
      finish(tr, g, RouteStatus::loop_detected);
      return tr;
    }
  }

  tr.split_point = u;
  const Vec2 d = g.pts[u] - tp;
  const double off =
      std::remainder(std::atan2(d.y, d.x) - cone_bisector_angle(j, 6), 2.0 * kPi);
  const int dir6 = off < 0.0 ? (j + 1) % 6 : (j + 2) % 6;
  const OrientedConeLine line{tp, dir6};
  const int sign = dot(line.direction(), tp - g.pts[u]) >= 0.0 ? 1 : -1;
  seen.insert(int64_t(u) * 2 + 1);
  while (true) {
    if (static_cast<int>(tr.steps.size()) >= limit) {
      finish(tr, g, RouteStatus::step_limit);
      return tr;
    }
    const SideStepResult sr = side_step(g, faces, u, line, sign, t);
    if (sr.exhausted) {
      finish(tr, g, RouteStatus::left_window);
      return tr;
    }
    StepRecord rec;
    rec.from = u;
    rec.to = sr.next;
    rec.tag = StepTag::side;
    rec.rule_case = sr.shortcut ? 12 : 11;
    rec.has_line = true;
    rec.line = line;
    rec.travel_sign = sign;
    rec.corridor_face = sr.face;
    rec.consulted.push_back(edge_triangle(g, u, sr.next, parity));
    push_step(tr, g, std::move(rec));
    u = sr.next;
    if (u == t) {
      finish(tr, g, RouteStatus::arrived);
      return tr;
    }
    if (!seen.insert(int64_t(u) * 2 + 1).second) {
      finish(tr, g, RouteStatus::loop_detected);
      return tr;
    }
  }
}

}  // namespace

RouteTrace theta_route(const ThetaGraph& g, int32_t s, int32_t t, const RouteOptions& opts) {
  check_pair(g, s, t);
  RouteTrace tr;
  tr.s = s;
  tr.t = t;
  tr.vertices.push_back(s);
  if (s == t) return tr;
  const Point tp = g.pts[t];
  const int limit = resolve_max_steps(opts, g.n());
  std::unordered_set<int32_t> seen{s};
  int32_t u = s;
  while (true) {
    if (static_cast<int>(tr.steps.size()) >= limit) {
      finish(tr, g, RouteStatus::step_limit);
      return tr;
    }
    NeighborhoodView view(g, u);
    const int cone = cone_index(g.pts[u], tp, g.spec.k);
    const int32_t nxt = theta_step(view, tp);
    if (nxt < 0) {
      finish(tr, g, RouteStatus::dead_end);
      return tr;
    }
    StepRecord rec;
    rec.from = u;
    rec.to = nxt;
    rec.tag = StepTag::theta;
    rec.cone = cone;
    rec.consulted.push_back(canonical_triangle(g.pts[u], g.pts[nxt], g.spec.k));
    push_step(tr, g, std::move(rec));
    u = nxt;
    if (u == t) {
      finish(tr, g, RouteStatus::arrived);
      return tr;
    }
    if (!seen.insert(u).second) {
      finish(tr, g, RouteStatus::loop_detected);
      return tr;
    }
  }
}

RouteTrace positive_route(const ThetaGraph& g, int32_t s, int32_t t, const RouteOptions& opts) {
  require_even6(g);
  const FacesHolder fh = obtain_faces(g, 0, opts);
  return positive_impl(g, *fh.faces, 0, s, t, opts);
}

RouteTrace memoryless_negative_route(const ThetaGraph& g, int32_t s, int32_t t,
                                     const RouteOptions& opts) {
  return ladder_route(g, s, t, opts, LadderKind::memoryless);
}

RouteTrace constmem_negative_route(const ThetaGraph& g, int32_t s, int32_t t,
                                   const RouteOptions& opts) {
  return ladder_route(g, s, t, opts, LadderKind::constmem);
}

RouteTrace bose_negative_route(const ThetaGraph& g, int32_t s, int32_t t,
                               const RouteOptions& opts) {
  return ladder_route(g, s, t, opts, LadderKind::bose);
}

RouteTrace theta6_auto_route(const ThetaGraph& g, int32_t s, int32_t t,
                             const RouteOptions& opts) {
  check_pair(g, s, t);
  if (g.spec.kind != GraphKind::theta || g.spec.k != 6) {
    throw ContractViolation("theta6_auto_route: full graph with k = 6 required");
  }
  if (s == t) {
    RouteTrace tr;
    tr.s = s;
    tr.t = t;
    tr.vertices.push_back(s);
    return tr;
  }
  const int parity = cone_index(g.pts[s], g.pts[t], 6) % 2;
  const FacesHolder fh = obtain_faces(g, parity, opts);
  return positive_impl(g, *fh.faces, parity, s, t, opts);
}

RouteTrace route(Algorithm alg, const ThetaGraph& g, int32_t s, int32_t t,
                 const RouteOptions& opts) {
  switch (alg) {
    case Algorithm::theta_k: return theta_route(g, s, t, opts);
    case Algorithm::positive: return positive_route(g, s, t, opts);
    case Algorithm::memoryless_negative: return memoryless_negative_route(g, s, t, opts);
    case Algorithm::constmem_negative: return constmem_negative_route(g, s, t, opts);
    case Algorithm::bose_negative: return bose_negative_route(g, s, t, opts);
    case Algorithm::theta6_auto: return theta6_auto_route(g, s, t, opts);
  }
  throw ContractViolation("route: unknown algorithm");
}

}  // namespace tdroute
