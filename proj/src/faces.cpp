#include "tdroute/faces.hpp"

#include <algorithm>
#include <numeric>

namespace tdroute {
namespace {

struct Dsu {
  std::vector<int32_t> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

FaceList extract_faces(const ThetaGraph& g) {
  const int n = g.n();
  const int m = static_cast<int>(g.adj.size());
  FaceList out;
  out.parity = g.spec.kind == GraphKind::half_even   ? 0
               : g.spec.kind == GraphKind::half_odd ? 1
                                                    : -1;
  out.face_start.assign(1, 0);
  out.vert_face_start.assign(n + 1, 0);
  if (m == 0) return out;

  std::vector<int32_t> origin(m);
  std::vector<double> pa(m);
  for (int v = 0; v < n; ++v) {
    for (int e = g.adj_start[v]; e < g.adj_start[v + 1]; ++e) {
      origin[e] = v;
      pa[e] = pseudo_angle(g.pts[g.adj[e]] - g.pts[v]);
    }
  }

  // twin[e] is the same edge walked the other way. The pseudo-angle of the
  // twin is computed from the identical subtraction, so the binary search
  // hits it exactly; the linear fallback is for safety only.
  std::vector<int32_t> twin(m);
  for (int v = 0; v < n; ++v) {
    for (int e = g.adj_start[v]; e < g.adj_start[v + 1]; ++e) {
      const int u = g.adj[e];
      const double target = pseudo_angle(g.pts[v] - g.pts[u]);
      const auto lo = pa.begin() + g.adj_start[u];
      const auto hi = pa.begin() + g.adj_start[u + 1];
      int f = static_cast<int>(std::lower_bound(lo, hi, target) - pa.begin());
      if (f >= g.adj_start[u + 1] || g.adj[f] != v) {
        f = g.adj_start[u];
        while (g.adj[f] != v) ++f;
      }
      twin[e] = f;
    }
  }

  // Interior stays on the left: after arriving at v, leave along the
  // neighbor clockwise-next from where we came. Bounded face walks then
  // run counterclockwise and the outer walk clockwise.
  std::vector<int32_t> next(m);
  for (int e = 0; e < m; ++e) {
    const int t = twin[e];
    const int v = origin[t];
    next[e] = t == g.adj_start[v] ? g.adj_start[v + 1] - 1 : t - 1;
  }

  Dsu comp(n);
  for (int e = 0; e < m; ++e) comp.unite(origin[e], g.adj[e]);

  std::vector<int32_t> walk_of(m, -1);
  std::vector<double> area2;
  std::vector<int32_t> walk_start(1, 0);
  std::vector<int32_t> walk_verts;
  walk_verts.reserve(m);
  for (int e0 = 0; e0 < m; ++e0) {
    if (walk_of[e0] >= 0) continue;
    const int w = static_cast<int>(area2.size());
    double a2 = 0.0;
    int e = e0;
    do {
      walk_of[e] = w;
      const Point a = g.pts[origin[e]], b = g.pts[g.adj[e]];
      a2 += cross(a, b);
      walk_verts.push_back(origin[e]);
      e = next[e];
    } while (e != e0);
    area2.push_back(a2);
    walk_start.push_back(static_cast<int32_t>(walk_verts.size()));
  }

  // Every component has exactly one outer walk; it has the smallest
  // signed area there (negative, or zero for a tree). The rest are the
  // bounded faces.
  const int walks = static_cast<int>(area2.size());
  std::vector<int32_t> outer_walk(n, -1);
  for (int w = 0; w < walks; ++w) {
    const int c = comp.find(walk_verts[walk_start[w]]);
    if (outer_walk[c] < 0 || area2[w] < area2[outer_walk[c]]) outer_walk[c] = w;
  }
  std::vector<bool> is_outer(walks, false);
  for (int c = 0; c < n; ++c) {
    if (outer_walk[c] >= 0) is_outer[outer_walk[c]] = true;
  }

  out.face_verts.reserve(walk_verts.size());
  for (int w = 0; w < walks; ++w) {
    if (is_outer[w]) continue;
    out.face_verts.insert(out.face_verts.end(), walk_verts.begin() + walk_start[w],
                          walk_verts.begin() + walk_start[w + 1]);
    out.face_start.push_back(static_cast<int32_t>(out.face_verts.size()));
  }

  for (int32_t v : out.face_verts) ++out.vert_face_start[v + 1];
  for (int v = 0; v < n; ++v) out.vert_face_start[v + 1] += out.vert_face_start[v];
  out.vert_faces.resize(out.face_verts.size());
  std::vector<int32_t> fill(out.vert_face_start.begin(), out.vert_face_start.end() - 1);
  for (int f = 0; f < out.face_count(); ++f) {
    for (int32_t v : out.face(f)) out.vert_faces[fill[v]++] = f;
  }
  return out;
}

}  // namespace tdroute
