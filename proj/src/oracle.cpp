#include "tdroute/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <queue>
#include <unordered_map>
#include <vector>

namespace tdroute {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_vertex(const ThetaGraph& g, int32_t v, const char* who) {
  if (v < 0 || v >= g.n()) throw ContractViolation(std::string(who) + ": vertex out of range");
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Distances from src to every vertex, with the predecessor tree.
void dijkstra(const ThetaGraph& g, int32_t src, std::vector<double>& dists,
              std::vector<int32_t>& prev) {
  const int n = g.n();
  dists.assign(n, kInf);
  prev.assign(n, -1);
  dists[src] = 0.0;
  using Item = std::pair<double, int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  heap.emplace(0.0, src);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dists[u]) continue;
    for (int32_t v : g.neighbors(u)) {
      const double nd = d + dist(g.pts[u], g.pts[v]);
      if (nd < dists[v]) {
        dists[v] = nd;
        prev[v] = u;
        heap.emplace(nd, v);
      }
    }
  }
}

}  // namespace

ShortestPathResult shortest_path(const ThetaGraph& g, int32_t s, int32_t t) {
  check_vertex(g, s, "shortest_path");
  check_vertex(g, t, "shortest_path");
  ShortestPathResult out;
  if (s == t) {
    out.length = 0.0;
    out.path = {s};
    out.reachable = true;
    return out;
  }
  std::vector<double> dists;
  std::vector<int32_t> prev;
  dijkstra(g, s, dists, prev);
  if (dists[t] == kInf) return out;
  out.length = dists[t];
  out.reachable = true;
  for (int32_t v = t; v >= 0; v = prev[v]) out.path.push_back(v);
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

SpanningRatioResult spanning_ratio(const ThetaGraph& g,
                                   std::span<const std::pair<int32_t, int32_t>> pairs) {
  if (pairs.empty()) throw ContractViolation("spanning_ratio: no pairs given");
  for (const auto& [a, b] : pairs) {
    check_vertex(g, a, "spanning_ratio");
    check_vertex(g, b, "spanning_ratio");
    if (a == b) throw ContractViolation("spanning_ratio: degenerate pair");
  }
  std::vector<size_t> order(pairs.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return pairs[a].first < pairs[b].first; });

  SpanningRatioResult out;
  std::vector<double> dists;
  std::vector<int32_t> prev;
  int32_t cur_src = -1;
  for (size_t i : order) {
    const auto [a, b] = pairs[i];
    if (a != cur_src) {
      dijkstra(g, a, dists, prev);
      cur_src = a;
    }
    if (dists[b] == kInf) {
      ++out.unreachable;
      continue;
    }
    ++out.checked;
    const double ratio = dists[b] / dist(g.pts[a], g.pts[b]);
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.argmax = {a, b};
    }
  }
  return out;
}

std::vector<int32_t> corridor_boundary(const ThetaGraph& g, const FaceList& faces, int32_t s,
                                       int32_t t, const OrientedConeLine& line) {
  if (faces.parity != 0 && faces.parity != 1) {
    throw ContractViolation("corridor_boundary: faces must come from a half graph");
  }
  check_vertex(g, s, "corridor_boundary");
  check_vertex(g, t, "corridor_boundary");
  const double flip = faces.parity == 1 ? -1.0 : 1.0;
  auto offset_of = [&](Point w) { return flip * line.offset(w); };
  const int sign =
      dot(g.pts[t] - g.pts[s], line.direction()) >= 0.0 ? 1 : -1;
  const Vec2 along = line.direction() * static_cast<double>(sign);
  auto coord_of = [&](Point w) { return dot(w - line.anchor, along); };
  if (offset_of(g.pts[s]) < -1e-9 || offset_of(g.pts[t]) < -1e-9) {
    throw ContractViolation("corridor_boundary: endpoints must lie on the closed positive side");
  }

  std::vector<int32_t> out;
  out.push_back(s);
  if (s == t) return out;

  // Line-crossing test shared with the walker: one endpoint strictly
  // negative, the other on the closed positive side, which is the below
  // vertex the boundary keeps.
  auto crossing = [&](int32_t x, int32_t y, double& cc, int32_t& below) {
    const double ox = offset_of(g.pts[x]), oy = offset_of(g.pts[y]);
    int32_t lo, hi;
    double olo, ohi;
    if (ox < 0.0 && oy >= 0.0) {
      lo = x; hi = y; olo = ox; ohi = oy;
    } else if (oy < 0.0 && ox >= 0.0) {
      lo = y; hi = x; olo = oy; ohi = ox;
    } else {
      return false;
    }
    const Point at = g.pts[lo] + (g.pts[hi] - g.pts[lo]) * (-olo / (ohi - olo));
    cc = coord_of(at);
    below = hi;
    return true;
  };

  // Exit of a face: its crossing edge with the largest travel coordinate.
  auto face_exit = [&](int32_t f, int32_t& ex, int32_t& ey, int32_t& below, double& cc) {
    const auto verts = faces.face(f);
    const size_t m = verts.size();
    bool found = false;
    for (size_t e = 0; e < m; ++e) {
      const int32_t x = verts[e], y = verts[(e + 1) % m];
      double c;
      int32_t b;
      if (!crossing(x, y, c, b)) continue;
      if (!found || c > cc) {
        found = true;
        cc = c;
        ex = x;
        ey = y;
        below = b;
      }
    }
    return found;
  };

  if (side_walk_pinch(g, faces.parity, s, line, sign, t)) {
    out.push_back(t);
    return out;
  }

  // Map each crossing edge to its at most two incident faces, so the walk
  // can step across instead of rescanning incident faces.
  std::unordered_map<int64_t, std::array<int32_t, 2>> edge_faces;
  auto edge_key = [](int32_t a, int32_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<int64_t>(a) << 32) | static_cast<uint32_t>(b);
  };
  for (int f = 0; f < faces.face_count(); ++f) {
    const auto verts = faces.face(f);
    const size_t m = verts.size();
    for (size_t e = 0; e < m; ++e) {
      const int32_t x = verts[e], y = verts[(e + 1) % m];
      double cc;
      int32_t b;
      if (!crossing(x, y, cc, b)) continue;
      auto& slot = edge_faces.try_emplace(edge_key(x, y), std::array<int32_t, 2>{-1, -1})
                       .first->second;
      (slot[0] < 0 ? slot[0] : slot[1]) = f;
    }
  }

  // Farthest incident crossing face of v, the walker's anchor rule.
  auto best_at = [&](int32_t v, double& cc) {
    int32_t best = -1;
    for (int32_t f : faces.faces_at(v)) {
      int32_t ex, ey, b;
      double c;
      if (!face_exit(f, ex, ey, b, c)) continue;
      if (best < 0 || c >= cc) {
        best = f;
        cc = c;
      }
    }
    return best;
  };

  double start_coord = 0.0;
  int32_t cur = best_at(s, start_coord);
  if (cur < 0) throw ContractViolation("corridor_boundary: s does not touch the corridor");

  int32_t last = s;
  const int guard = 2 * faces.face_count() + 4;
  for (int it = 0; it < guard; ++it) {
    int32_t ex, ey, below;
    double cc;
    if (!face_exit(cur, ex, ey, below, cc)) {
      throw ContractViolation("corridor_boundary: face chain broke");
    }
    if (below != last) {
      out.push_back(below);
      last = below;
      if (last == t) return out;
      if (side_walk_pinch(g, faces.parity, last, line, sign, t)) {
        out.push_back(t);
        return out;
      }
    }
    const auto itf = edge_faces.find(edge_key(ex, ey));
    int32_t next = -1;
    if (itf != edge_faces.end()) {
      next = itf->second[0] == cur ? itf->second[1] : itf->second[0];
    }
    if (next < 0) {
      // The chain leaves the triangulated region here. When the exit ends
      // at the boundary vertex just emitted, the corridor may resume from
      // another crossing face around that same vertex; anywhere else it
      // has genuinely ended.
      double resume_coord = 0.0;
      const int32_t resume = best_at(last, resume_coord);
      if (resume < 0 || resume_coord <= cc) {
        throw ContractViolation("corridor_boundary: corridor ends before the goal");
      }
      cur = resume;
      continue;
    }
    cur = next;
  }
  throw ContractViolation("corridor_boundary: face chain does not advance");
}

TraceReport certify_trace(const RouteTrace& trace, const ThetaGraph& g, double bound) {
  if (trace.status != RouteStatus::arrived) {
    throw ContractViolation("certify_trace: trace must have arrived");
  }
  check_vertex(g, trace.s, "certify_trace");
  check_vertex(g, trace.t, "certify_trace");
  TraceReport rep;
  auto add = [&](const char* name, bool pass, std::string detail) {
    rep.checks.push_back({name, pass, std::move(detail)});
  };
  const auto& steps = trace.steps;
  const auto& verts = trace.vertices;

  {
    bool ok = !verts.empty() && verts.front() == trace.s && verts.back() == trace.t &&
              steps.size() + 1 == verts.size();
    std::string detail = ok ? "" : "vertex sequence does not line up with s, t and the steps";
    for (size_t i = 0; ok && i < steps.size(); ++i) {
      if (steps[i].from != verts[i] || steps[i].to != verts[i + 1]) {
        ok = false;
        detail = "step " + std::to_string(i) + " endpoints disagree with the vertex list";
      } else if (!g.has_edge(steps[i].from, steps[i].to)) {
        ok = false;
        detail = "step " + std::to_string(i) + " travels a non-edge";
      }
    }
    add("edge-validity", ok, ok ? std::to_string(steps.size()) + " edges present" : detail);
  }

  {
    double len = 0.0;
    for (size_t i = 1; i < verts.size(); ++i) len += dist(g.pts[verts[i - 1]], g.pts[verts[i]]);
    bool ok = std::abs(len - trace.length) <= 1e-9 * std::max(1.0, len);
    std::string detail = "recomputed " + num(len) + ", recorded " + num(trace.length);
    if (ok) {
      const double want =
          trace.s == trace.t ? 1.0 : trace.length / dist(g.pts[trace.s], g.pts[trace.t]);
      ok = std::abs(want - trace.ratio) <= 1e-9 * std::max(1.0, want);
      if (!ok) detail = "recomputed ratio " + num(want) + ", recorded " + num(trace.ratio);
    }
    add("length-accounting", ok, std::move(detail));
  }

  add("ratio-bound", trace.ratio <= bound + 1e-9,
      "ratio " + num(trace.ratio) + " against bound " + num(bound));

  {
    // Any successor step in cone c gains at least cos(pi/k) of its length
    // along the cone bisector, so each constant-cone run is budgeted by
    // the bisector advance it achieves.
    const double factor = 1.0 / std::cos(kPi / g.spec.k);
    bool ok = true;
    std::string detail;
    int runs = 0;
    size_t i = 0;
    auto is_forward = [](const StepRecord& r) {
      return r.tag == StepTag::forward || r.tag == StepTag::theta ||
             r.tag == StepTag::bose_negative;
    };
    while (ok && i < steps.size()) {
      if (!is_forward(steps[i])) {
        ++i;
        continue;
      }
      const int cone = steps[i].cone;
      const Vec2 bis = cone_bisector(cone, g.spec.k);
      double len = 0.0, advance = 0.0;
      size_t j = i;
      for (; j < steps.size() && is_forward(steps[j]) && steps[j].cone == cone; ++j) {
        const Vec2 e = g.pts[steps[j].to] - g.pts[steps[j].from];
        len += norm(e);
        advance += dot(e, bis);
      }
      ++runs;
      if (len > factor * advance + 1e-9) {
        ok = false;
        detail = "run at steps " + std::to_string(i) + ".." + std::to_string(j - 1) + " in cone " +
                 std::to_string(cone) + ": length " + num(len) + " over budget " +
                 num(factor * advance);
      }
      i = j;
    }
    if (ok) detail = std::to_string(runs) + " runs within budget";
    add("forward-run-bound", ok, std::move(detail));
  }

  {
    // A side run along one guide line doubles at most the ground it gains
    // along that line.
    bool ok = true;
    std::string detail;
    int runs = 0;
    size_t i = 0;
    auto same_line = [](const StepRecord& a, const StepRecord& b) {
      return a.line.anchor.x == b.line.anchor.x && a.line.anchor.y == b.line.anchor.y &&
             a.line.dir6 == b.line.dir6 && a.travel_sign == b.travel_sign;
    };
    while (ok && i < steps.size()) {
      if (steps[i].tag != StepTag::side) {
        ++i;
        continue;
      }
      if (!steps[i].has_line) {
        ok = false;
        detail = "side step " + std::to_string(i) + " carries no guide line";
        break;
      }
      double len = 0.0;
      size_t j = i;
      for (; j < steps.size() && steps[j].tag == StepTag::side && steps[j].has_line &&
             same_line(steps[i], steps[j]);
           ++j) {
        len += dist(g.pts[steps[j].from], g.pts[steps[j].to]);
      }
      const Vec2 along = steps[i].line.direction() * static_cast<double>(steps[i].travel_sign);
      const double gain = dot(g.pts[steps[j - 1].to] - g.pts[steps[i].from], along);
      ++runs;
      if (len > 2.0 * gain + 1e-9) {
        ok = false;
        detail = "run at steps " + std::to_string(i) + ".." + std::to_string(j - 1) + ": length " +
                 num(len) + " over budget " + num(2.0 * gain);
      }
      i = j;
    }
    if (ok) detail = std::to_string(runs) + " runs within budget";
    add("side-run-bound", ok, std::move(detail));
  }

  {
    // The boundary of a face chain never uses the edge family parallel to
    // the guide line: those edges cannot cross it or lean on it.
    bool ok = true;
    std::string detail;
    int checked = 0;
    for (size_t i = 0; ok && i < steps.size(); ++i) {
      if (steps[i].tag != StepTag::side || !steps[i].has_line) continue;
      ++checked;
      if (g.spec.k != 6) {
        ok = false;
        detail = "side step on a graph without six cones";
        break;
      }
      const int family = cone_index(g.pts[steps[i].from], g.pts[steps[i].to], 6) % 3;
      if (family == steps[i].line.dir6 % 3) {
        ok = false;
        detail = "side step " + std::to_string(i) + " travels the family parallel to its line";
      }
    }
    if (ok) detail = std::to_string(checked) + " side steps off the parallel family";
    add("side-run-colors", ok, std::move(detail));
  }

  {
    const ShortestPathResult sp = shortest_path(g, trace.s, trace.t);
    const bool ok =
        sp.reachable && trace.length + 1e-9 * std::max(1.0, trace.length) >= sp.length;
    add("shortest-path-floor", ok,
        "walk " + num(trace.length) + " against optimum " + num(sp.length));
  }

  return rep;
}

}  // namespace tdroute
