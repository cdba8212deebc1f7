#include "tdroute/theta_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tdroute {
namespace {

struct BucketGrid {
  double x0 = 0.0, y0 = 0.0;
  double hx = 1.0, hy = 1.0;
  int w = 1, h = 1;
  std::vector<int32_t> cell_start;
  std::vector<int32_t> cell_pts;
  std::vector<Point> cell_xy;  // coordinates in cell_pts order, scan-friendly

  int col(double x) const {
    return std::clamp(static_cast<int>(std::floor((x - x0) / hx)), 0, w - 1);
  }
  int row(double y) const {
    return std::clamp(static_cast<int>(std::floor((y - y0) / hy)), 0, h - 1);
  }
  int cell(int i, int j) const { return j * w + i; }
  double xmax() const { return x0 + w * hx; }
  double ymax() const { return y0 + h * hy; }
};

BucketGrid make_grid(const std::vector<Point>& pts) {
  BucketGrid g;
  double x1 = pts[0].x, y1 = pts[0].y;
  g.x0 = x1;
  g.y0 = y1;
  for (const Point& p : pts) {
    g.x0 = std::min(g.x0, p.x);
    g.y0 = std::min(g.y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  const double bw = std::max(x1 - g.x0, 1e-9);
  const double bh = std::max(y1 - g.y0, 1e-9);
  // About four points per cell keeps ring scans short.
  const int cells = std::max<int>(1, static_cast<int>(pts.size()) / 4);
  g.w = std::clamp(static_cast<int>(std::lround(std::sqrt(cells * bw / bh))), 1, 4096);
  g.h = std::clamp(cells / g.w, 1, 4096);
  g.hx = bw / g.w * (1.0 + 1e-12) + 1e-300;
  g.hy = bh / g.h * (1.0 + 1e-12) + 1e-300;

  const int n = static_cast<int>(pts.size());
  g.cell_start.assign(g.w * g.h + 1, 0);
  for (const Point& p : pts) ++g.cell_start[g.cell(g.col(p.x), g.row(p.y)) + 1];
  for (size_t c = 1; c < g.cell_start.size(); ++c) g.cell_start[c] += g.cell_start[c - 1];
  g.cell_pts.resize(n);
  std::vector<int32_t> fill(g.cell_start.begin(), g.cell_start.end() - 1);
  for (int i = 0; i < n; ++i) {
    g.cell_pts[fill[g.cell(g.col(pts[i].x), g.row(pts[i].y))]++] = i;
  }
  g.cell_xy.resize(n);
  for (int i = 0; i < n; ++i) g.cell_xy[i] = pts[g.cell_pts[i]];
  return g;
}

// Largest distance from p to any point of the closed cone intersected
// with the grid rectangle. Evaluated at the region's extreme points with
// a small angular pad, so it never undershoots.
double cone_rect_reach(Point p, int cone, int k, const BucketGrid& g) {
  constexpr double pad = 1e-6;
  double best = 0.0;
  const Point corners[4] = {
      {g.x0, g.y0}, {g.xmax(), g.y0}, {g.x0, g.ymax()}, {g.xmax(), g.ymax()}};
  for (const Point& c : corners) {
    if ((c.x != p.x || c.y != p.y) && cone_contains_closed(p, c, cone, k, pad)) {
      best = std::max(best, dist(p, c));
    }
  }
  for (double ang : {cone_ray_angle_cw(cone, k), cone_ray_angle_ccw(cone, k)}) {
    const Vec2 u = unit_from_angle(ang);
    const double lox[2] = {g.x0, g.xmax()};
    for (double X : lox) {
      if (std::abs(u.x) > 1e-15) {
        const double t = (X - p.x) / u.x;
        const double y = p.y + t * u.y;
        if (t > 0.0 && y >= g.y0 - 1e-9 && y <= g.ymax() + 1e-9) best = std::max(best, t);
      }
    }
    const double loy[2] = {g.y0, g.ymax()};
    for (double Y : loy) {
      if (std::abs(u.y) > 1e-15) {
        const double t = (Y - p.y) / u.y;
        const double x = p.x + t * u.x;
        if (t > 0.0 && x >= g.x0 - 1e-9 && x <= g.xmax() + 1e-9) best = std::max(best, t);
      }
    }
  }
  return best;
}

struct ConeSearch {
  double best_proj = 0.0;
  int32_t best = -1;
  bool active = false;
  bool stopped = true;
  double reach = -1.0;  // lazily computed cone_rect_reach, -1 until then
};

// Cross-product sextant classifier, exact away from cone boundaries.
// Returns -1 inside a guard band around any boundary, where the caller
// must fall back to cone_index and its snapping rule.
int fast_cone6(Vec2 d) {
  const double guard = 1e-11 * (std::abs(d.x) + std::abs(d.y));
  const double a = d.y - kSqrt3 * d.x;
  const double b = d.y + kSqrt3 * d.x;
  if (std::abs(d.y) <= guard || std::abs(a) <= guard || std::abs(b) <= guard) return -1;
  if (d.y > 0.0) {
    if (a > 0.0) return b > 0.0 ? 0 : 1;
    return 5;
  }
  if (a > 0.0) return 2;
  return b > 0.0 ? 4 : 3;
}

void check_sites(const std::vector<Point>& pts) {
  for (const Point& p : pts) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw DegenerateInput("build_theta_graph: non-finite coordinate");
    }
  }
  std::vector<std::pair<double, double>> keys;
  keys.reserve(pts.size());
  for (const Point& p : pts) keys.emplace_back(p.x, p.y);
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw DegenerateInput("build_theta_graph: duplicate site");
  }
}

}  // namespace

// Collapses the directed successor table into undirected adjacency,
// counterclockwise-sorted per vertex. A pair can enter twice, once from
// each endpoint's successor table; the per-vertex dedup removes those.
static void rebuild_adjacency(ThetaGraph& out) {
  const int n = out.n();
  const int k = out.spec.k;
  std::vector<int32_t> loose_start(n + 1, 0);
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < k; ++c) {
      const int32_t s = out.successor[static_cast<size_t>(v) * k + c];
      if (s >= 0) {
        ++loose_start[v + 1];
        ++loose_start[s + 1];
      }
    }
  }
  for (int v = 0; v < n; ++v) loose_start[v + 1] += loose_start[v];
  std::vector<int32_t> loose(loose_start[n]);
  std::vector<int32_t> fill(loose_start.begin(), loose_start.end() - 1);
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < k; ++c) {
      const int32_t s = out.successor[static_cast<size_t>(v) * k + c];
      if (s >= 0) {
        loose[fill[v]++] = s;
        loose[fill[s]++] = v;
      }
    }
  }

  out.adj_start.assign(n + 1, 0);
  out.adj.resize(loose.size());
  std::vector<std::pair<double, int32_t>> keyed;
  int32_t cursor = 0;
  for (int v = 0; v < n; ++v) {
    keyed.clear();
    for (int e = loose_start[v]; e < loose_start[v + 1]; ++e) {
      keyed.emplace_back(pseudo_angle(out.pts[loose[e]] - out.pts[v]), loose[e]);
    }
    std::sort(keyed.begin(), keyed.end());
    keyed.erase(std::unique(keyed.begin(), keyed.end()), keyed.end());
    for (const auto& [pa, u] : keyed) out.adj[cursor++] = u;
    out.adj_start[v + 1] = cursor;
  }
  out.adj.resize(cursor);
}

ThetaGraph build_theta_graph(std::vector<Point> pts, GraphSpec spec) {
  if (spec.k < 2) throw ContractViolation("build_theta_graph: k must be at least 2");
  if (spec.kind != GraphKind::theta && spec.k != 6) {
    throw ContractViolation("build_theta_graph: half kinds require k = 6");
  }
  check_sites(pts);

  ThetaGraph out;
  out.spec = spec;
  out.pts = std::move(pts);
  const int n = out.n();
  const int k = spec.k;
  out.successor.assign(static_cast<size_t>(n) * k, -1);
  if (n == 0) {
    out.adj_start.assign(1, 0);
    return out;
  }

  const BucketGrid grid = make_grid(out.pts);
  const double hmin = std::min(grid.hx, grid.hy);
  const double cosk = std::cos(kPi / k);
  const double cosk2 = cosk * cosk;
  // Angular pad that keeps a cell's whole rectangle inside the test cone
  // when its center passes, for cells at ring distance 3 or more.
  const double slack_num = 0.5 * std::hypot(grid.hx, grid.hy) / hmin + 0.2;

  std::vector<Vec2> bis(k);
  for (int c = 0; c < k; ++c) bis[c] = cone_bisector(c, k);

  std::vector<ConeSearch> cs(k);
  for (int ip = 0; ip < n; ++ip) {
    const Point p = out.pts[ip];
    int open_cones = 0;
    for (int c = 0; c < k; ++c) {
      cs[c] = ConeSearch{};
      if (cone_active(spec, c)) {
        cs[c].active = true;
        cs[c].stopped = false;
        ++open_cones;
      }
    }

    const int ci = grid.col(p.x), cj = grid.row(p.y);
    const int ring_limit = std::max(std::max(ci, grid.w - 1 - ci), std::max(cj, grid.h - 1 - cj));
    // A point outside ring r sits past one of the four slab bounds, so the
    // disk of this radius around p is fully covered after scanning ring r.
    const double inx = p.x - (grid.x0 + ci * grid.hx);
    const double iny = p.y - (grid.y0 + cj * grid.hy);
    const double mx = std::max(0.0, std::min(inx, grid.hx - inx));
    const double my = std::max(0.0, std::min(iny, grid.hy - iny));

    auto scan_cell = [&](int i, int j, int r) {
      if (i < 0 || i >= grid.w || j < 0 || j >= grid.h) return;
      if (r >= 2) {
        // No point of this cell can undercut the worst pending best, so
        // the whole cell is skippable. Only valid once every open cone
        // has a candidate.
        double worst = -1.0;
        for (int c = 0; c < k; ++c) {
          const ConeSearch& s = cs[c];
          if (s.stopped) continue;
          if (s.best < 0) {
            worst = -1.0;
            break;
          }
          worst = std::max(worst, s.best_proj);
        }
        if (worst >= 0.0) {
          const double dxlb = i > ci   ? (i - ci) * grid.hx - inx
                              : i < ci ? (ci - i - 1) * grid.hx + inx
                                       : 0.0;
          const double dylb = j > cj   ? (j - cj) * grid.hy - iny
                              : j < cj ? (cj - j - 1) * grid.hy + iny
                                       : 0.0;
          const double lb2 = dxlb * dxlb + dylb * dylb;
          const double m = worst + 1e-9;
          if (lb2 * cosk2 > m * m) return;
        }
      }
      if (r >= 3) {
        const Point center{grid.x0 + (i + 0.5) * grid.hx, grid.y0 + (j + 0.5) * grid.hy};
        const double slack = slack_num / (r - 1);
        bool wanted = false;
        for (int c = 0; c < k && !wanted; ++c) {
          if (!cs[c].stopped && cone_contains_closed(p, center, c, k, slack)) wanted = true;
        }
        if (!wanted) return;
      }
      const int cell = grid.cell(i, j);
      for (int32_t e = grid.cell_start[cell]; e < grid.cell_start[cell + 1]; ++e) {
        const Point q = grid.cell_xy[e];
        if (q.x == p.x && q.y == p.y) continue;
        int c = k == 6 ? fast_cone6(q - p) : -1;
        if (c < 0) c = cone_index(p, q, k);
        ConeSearch& s = cs[c];
        if (!s.active || s.stopped) continue;
        const double proj = dot(q - p, bis[c]);
        if (s.best < 0 || proj < s.best_proj) {
          s.best = grid.cell_pts[e];
          s.best_proj = proj;
        } else if (proj == s.best_proj) {
          const Point cur = out.pts[s.best];
          if (q.x < cur.x || (q.x == cur.x && q.y < cur.y)) s.best = grid.cell_pts[e];
        }
      }
    };

    for (int r = 0; open_cones > 0 && r <= ring_limit; ++r) {
      if (r == 0) {
        scan_cell(ci, cj, 0);
      } else {
        for (int i = ci - r; i <= ci + r; ++i) {
          scan_cell(i, cj + r, r);
          scan_cell(i, cj - r, r);
        }
        for (int j = cj - r + 1; j <= cj + r - 1; ++j) {
          scan_cell(ci - r, j, r);
          scan_cell(ci + r, j, r);
        }
      }
      const double covered = std::min(r * grid.hx + mx, r * grid.hy + my);
      for (int c = 0; c < k; ++c) {
        ConeSearch& s = cs[c];
        if (s.stopped) continue;
        if (s.best >= 0 && covered * cosk > s.best_proj + 1e-9) {
          s.stopped = true;
          --open_cones;
          continue;
        }
        if (s.best < 0 && r >= 2) {
          if (s.reach < 0.0) s.reach = cone_rect_reach(p, c, k, grid);
          if (covered > s.reach + 1e-9) {
            s.stopped = true;
            --open_cones;
          }
        }
      }
    }
    for (int c = 0; c < k; ++c) {
      if (cs[c].active) out.successor[static_cast<size_t>(ip) * k + c] = cs[c].best;
    }
  }

  rebuild_adjacency(out);
  return out;
}

ThetaGraph half_graph(const ThetaGraph& full, int parity) {
  if (full.spec.kind != GraphKind::theta || full.spec.k != 6) {
    throw ContractViolation("half_graph: needs a full graph with k = 6");
  }
  if (parity != 0 && parity != 1) throw ContractViolation("half_graph: parity must be 0 or 1");
  ThetaGraph out;
  out.spec.kind = parity == 0 ? GraphKind::half_even : GraphKind::half_odd;
  out.spec.k = 6;
  out.pts = full.pts;
  const int n = out.n();
  out.successor.assign(static_cast<size_t>(n) * 6, -1);
  for (int v = 0; v < n; ++v) {
    for (int c = parity; c < 6; c += 2) {
      out.successor[static_cast<size_t>(v) * 6 + c] = full.successor_of(v, c);
    }
  }
  rebuild_adjacency(out);
  return out;
}

ThetaGraph graph_from_successors(std::vector<Point> pts, GraphSpec spec,
                                 std::vector<int32_t> successor) {
  if (spec.k < 2) throw ContractViolation("graph_from_successors: k must be at least 2");
  if (spec.kind != GraphKind::theta && spec.k != 6) {
    throw ContractViolation("graph_from_successors: half kinds need k = 6");
  }
  check_sites(pts);
  const int n = static_cast<int>(pts.size());
  if (successor.size() != static_cast<size_t>(n) * spec.k) {
    throw DegenerateInput("graph_from_successors: table size is not n * k");
  }
  for (int v = 0; v < n; ++v) {
    for (int c = 0; c < spec.k; ++c) {
      const int32_t s = successor[static_cast<size_t>(v) * spec.k + c];
      if (s == -1) continue;
      if (s < 0 || s >= n || s == v) {
        throw DegenerateInput("graph_from_successors: bad successor index");
      }
      if (!cone_active(spec, c)) {
        throw DegenerateInput("graph_from_successors: successor in an inactive cone");
      }
    }
  }
  ThetaGraph out;
  out.spec = spec;
  out.pts = std::move(pts);
  out.successor = std::move(successor);
  rebuild_adjacency(out);
  return out;
}

bool half_edge(const ThetaGraph& g, int32_t u, int32_t v, int parity) {
  if (g.spec.k != 6) throw ContractViolation("half_edge: needs k = 6");
  if (parity != 0 && parity != 1) throw ContractViolation("half_edge: parity must be 0 or 1");
  if (u == v) return false;
  const int c = cone_index(g.pts[u], g.pts[v], 6);
  if (c % 2 == parity) return g.successor_of(u, c) == v;
  return g.successor_of(v, (c + 3) % 6) == u;
}

std::optional<EmptyTriangleViolation> certify_empty_triangle(const ThetaGraph& g) {
  if (g.n() == 0) return std::nullopt;
  const BucketGrid grid = make_grid(g.pts);
  const int k = g.spec.k;
  for (int v = 0; v < g.n(); ++v) {
    for (int c = 0; c < k; ++c) {
      const int32_t s = g.successor_of(v, c);
      if (s < 0) continue;
      const CanonicalTriangle tri = canonical_triangle(g.pts[v], g.pts[s], k);
      const Point a = tri.apex, cw = tri.corner_cw(), ccw = tri.corner_ccw();
      const double pad = 1e-9;
      const int i0 = grid.col(std::min(std::min(a.x, cw.x), ccw.x) - pad);
      const int i1 = grid.col(std::max(std::max(a.x, cw.x), ccw.x) + pad);
      const int j0 = grid.row(std::min(std::min(a.y, cw.y), ccw.y) - pad);
      const int j1 = grid.row(std::max(std::max(a.y, cw.y), ccw.y) + pad);
      for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
          const int cell = grid.cell(i, j);
          for (int32_t e = grid.cell_start[cell]; e < grid.cell_start[cell + 1]; ++e) {
            const int32_t w = grid.cell_pts[e];
            if (w == v || w == s) continue;
            if (tri.contains(g.pts[w], false)) {
              return EmptyTriangleViolation{v, c, w};
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

std::vector<std::pair<int32_t, int32_t>> edge_pairs(const ThetaGraph& g) {
  std::vector<std::pair<int32_t, int32_t>> out;
  out.reserve(g.adj.size() / 2);
  for (int v = 0; v < g.n(); ++v) {
    for (int32_t u : g.neighbors(v)) {
      if (v < u) out.emplace_back(v, u);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool union_is_full_graph(const ThetaGraph& even, const ThetaGraph& odd,
                         const ThetaGraph& full) {
  if (even.pts != odd.pts || even.pts != full.pts) return false;
  auto a = edge_pairs(even);
  const auto b = edge_pairs(odd);
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a == edge_pairs(full);
}

}  // namespace tdroute
