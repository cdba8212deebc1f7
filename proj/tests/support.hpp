#pragma once

// Slow reference implementations the unit tests compare the library
// against. Everything here favors obviousness over speed.

#include <limits>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "tdroute/faces.hpp"
#include "tdroute/theta_graph.hpp"

namespace refcheck {

using namespace tdroute;

// Edge-relaxation shortest paths from src, the slow cross-check for the
// label-setting oracle.
inline std::vector<double> bellman_ford(const ThetaGraph& g, int32_t src) {
  const int n = g.n();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> d(n, inf);
  d[src] = 0.0;
  for (int round = 0; round < n; ++round) {
    bool changed = false;
    for (int u = 0; u < n; ++u) {
      if (d[u] == inf) continue;
      for (int32_t v : g.neighbors(u)) {
        const double nd = d[u] + dist(g.pts[u], g.pts[v]);
        if (nd < d[v]) {
          d[v] = nd;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return d;
}

inline std::vector<Point> random_points(int n, uint64_t seed, double lo = 0.0,
                                        double hi = 10.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Point> pts(n);
  for (Point& p : pts) p = {u(rng), u(rng)};
  return pts;
}

// Direct n^2 scan for the successor table: per cone, the candidate with
// the smallest bisector projection, breaking ties by x then y.
inline std::vector<int32_t> slow_successors(const std::vector<Point>& pts, GraphSpec spec) {
  const int n = static_cast<int>(pts.size());
  const int k = spec.k;
  std::vector<int32_t> succ(static_cast<size_t>(n) * k, -1);
  for (int v = 0; v < n; ++v) {
    for (int q = 0; q < n; ++q) {
      if (q == v) continue;
      const int c = cone_index(pts[v], pts[q], k);
      if (!cone_active(spec, c)) continue;
      int32_t& cur = succ[static_cast<size_t>(v) * k + c];
      if (cur < 0) {
        cur = q;
        continue;
      }
      const Vec2 bis = cone_bisector(c, k);
      const double pq = dot(pts[q] - pts[v], bis);
      const double pc = dot(pts[cur] - pts[v], bis);
      const bool better = pq != pc   ? pq < pc
                          : pts[q].x != pts[cur].x ? pts[q].x < pts[cur].x
                                                   : pts[q].y < pts[cur].y;
      if (better) cur = q;
    }
  }
  return succ;
}

inline std::set<std::pair<int32_t, int32_t>> edge_set(const ThetaGraph& g) {
  std::set<std::pair<int32_t, int32_t>> out;
  for (int v = 0; v < g.n(); ++v) {
    for (int32_t u : g.neighbors(v)) {
      out.insert({std::min<int32_t>(v, u), std::max<int32_t>(v, u)});
    }
  }
  return out;
}

inline std::set<std::pair<int32_t, int32_t>> edges_of_successors(
    const std::vector<int32_t>& succ, int n, int k) {
  std::set<std::pair<int32_t, int32_t>> out;
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < k; ++c) {
      const int32_t s = succ[static_cast<size_t>(v) * k + c];
      if (s >= 0) out.insert({std::min<int32_t>(v, s), std::max<int32_t>(v, s)});
    }
  }
  return out;
}

// Bounded face count of a plane graph from the Euler relation:
// E - V + (number of connected components, isolated vertices included).
inline int euler_bounded_faces(const ThetaGraph& g) {
  const int n = g.n();
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int v = 0; v < n; ++v) {
    for (int32_t u : g.neighbors(v)) parent[find(v)] = find(u);
  }
  int comps = 0;
  for (int i = 0; i < n; ++i) {
    if (find(i) == i) ++comps;
  }
  return g.edge_count() - n + comps;
}

// n-per-edge scan of the open canonical triangle of every successor edge.
inline bool slow_empty_triangles_ok(const ThetaGraph& g) {
  for (int v = 0; v < g.n(); ++v) {
    for (int c = 0; c < g.spec.k; ++c) {
      const int32_t s = g.successor_of(v, c);
      if (s < 0) continue;
      const CanonicalTriangle tri = canonical_triangle(g.pts[v], g.pts[s], g.spec.k);
      for (int w = 0; w < g.n(); ++w) {
        if (w == v || w == s) continue;
        if (tri.contains(g.pts[w], false)) return false;
      }
    }
  }
  return true;
}

inline double face_area2(const ThetaGraph& g, const FaceList& fl, int f) {
  const auto cyc = fl.face(f);
  double a2 = 0.0;
  for (size_t i = 0; i < cyc.size(); ++i) {
    const Point a = g.pts[cyc[i]];
    const Point b = g.pts[cyc[(i + 1) % cyc.size()]];
    a2 += cross(a, b);
  }
  return a2;
}

}  // namespace refcheck
