#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "support.hpp"
#include "tdroute/faces.hpp"
#include "tdroute/routing.hpp"
#include "tdroute/theta_graph.hpp"

using namespace tdroute;

namespace {

ThetaGraph full6(std::vector<Point> pts) {
  return build_theta_graph(std::move(pts), GraphSpec{GraphKind::theta, 6});
}

std::vector<int32_t> visited(const RouteTrace& tr) { return tr.vertices; }

}  // namespace

TEST_CASE("even cone rule walks straight runs") {
  // 0 = start, 1 = midpoint, 2 = goal straight above.
  ThetaGraph g = full6({{0.0, -2.0}, {0.1, -1.0}, {0.0, 0.0}});
  RouteTrace tr = memoryless_negative_route(g, 0, 2);
  CHECK(tr.status == RouteStatus::arrived);
  CHECK(visited(tr) == std::vector<int32_t>{0, 1, 2});
  for (const StepRecord& rec : tr.steps) {
    CHECK(rec.tag == StepTag::forward);
    CHECK(rec.rule_case == 1);
    CHECK(rec.cone == 0);
  }
  CHECK(tr.split_point == -1);
  CHECK(tr.ratio == doctest::Approx((dist(g.pts[0], g.pts[1]) + dist(g.pts[1], g.pts[2])) /
                                    dist(g.pts[0], g.pts[2])));
}

TEST_CASE("first corner successor outside the goal triangle turns sideways") {
  // 0 = goal, 1 = start with the goal in a lower cone, 2 = clockwise-corner
  // successor far outside the goal triangle, 3 = the other successor.
  ThetaGraph g = full6({{0.0, 0.0}, {0.2, 1.0}, {-1.5, 0.6}, {0.7, 0.5}});
  RouteTrace tr = memoryless_negative_route(g, 1, 0);
  CHECK(tr.status == RouteStatus::arrived);
  CHECK(visited(tr) == std::vector<int32_t>{1, 0});
  REQUIRE(tr.steps.size() == 1);
  CHECK(tr.steps[0].tag == StepTag::side);
  CHECK(tr.steps[0].rule_case == 2);
  CHECK(tr.steps[0].has_line);
  CHECK(tr.steps[0].line.dir6 == 2);
  CHECK(tr.ratio == doctest::Approx(1.0));
  CHECK(tr.split_point == 1);
}

TEST_CASE("second corner successor outside the goal triangle turns the other way") {
  // 0 = goal, 1 = start, 2 = corner successor inside the goal triangle,
  // 3 = counterclockwise corner successor outside it.
  ThetaGraph g = full6({{0.0, 0.0}, {0.2, 1.0}, {-0.3, 0.7}, {0.7, 0.5}});
  RouteTrace tr = memoryless_negative_route(g, 1, 0);
  CHECK(tr.status == RouteStatus::arrived);
  CHECK(visited(tr) == std::vector<int32_t>{1, 2, 0});
  REQUIRE(tr.steps.size() == 2);
  CHECK(tr.steps[0].rule_case == 3);
  CHECK(tr.steps[0].tag == StepTag::side);
  CHECK(tr.steps[0].line.dir6 == 1);
  CHECK(tr.steps[1].rule_case == 3);
  // The clockwise corner cone of vertex 2 is empty, which the record
  // flags as a window-dependent decision.
  CHECK(tr.steps[1].consulted_absent);
  const double len = dist(g.pts[1], g.pts[2]) + dist(g.pts[2], g.pts[0]);
  CHECK(tr.ratio == doctest::Approx(len / dist(g.pts[1], g.pts[0])));
}

TEST_CASE("both corner successors inside pick the shallower corner") {
  // 0 = goal, 1 = start, 2 and 3 = corner successors inside the goal
  // triangle, 4 = onward successor that keeps vertex 3 alive.
  ThetaGraph g = full6({{0.0, 0.0}, {0.2, 1.0}, {-0.3, 0.7}, {0.4, 0.8}, {0.7, 0.5}});

  RouteTrace tr = memoryless_negative_route(g, 1, 0);
  CHECK(tr.status == RouteStatus::arrived);
  CHECK(visited(tr) == std::vector<int32_t>{1, 3, 2, 0});
  REQUIRE(tr.steps.size() == 3);
  CHECK(tr.steps[0].tag == StepTag::forward);
  CHECK(tr.steps[0].rule_case == 4);
  CHECK(tr.steps[0].cone == 4);
  CHECK(tr.steps[1].rule_case == 3);
  CHECK(tr.steps[2].rule_case == 3);
  CHECK(tr.split_point == 3);

  SUBCASE("constant-memory variant rides its remembered guide line instead") {
    RouteTrace cm = constmem_negative_route(g, 1, 0);
    CHECK(cm.status == RouteStatus::arrived);
    CHECK(visited(cm) == std::vector<int32_t>{1, 3, 2, 0});
    REQUIRE(cm.steps.size() == 3);
    CHECK(cm.steps[0].tag == StepTag::side);
    CHECK(cm.steps[0].rule_case == 4);
    CHECK(cm.steps[0].has_line);
    CHECK(cm.steps[0].line.anchor.x == g.pts[1].x);
    CHECK(cm.steps[0].line.anchor.y == g.pts[1].y);
    CHECK(cm.steps[0].line.dir6 == 5);
    CHECK(cm.steps[0].travel_sign == 1);
    CHECK(cm.split_point == 1);
  }

  SUBCASE("corner-occupancy variant tags its triangle steps") {
    RouteTrace bo = bose_negative_route(g, 1, 0);
    CHECK(bo.status == RouteStatus::arrived);
    CHECK(visited(bo) == std::vector<int32_t>{1, 3, 2, 0});
    REQUIRE(bo.steps.size() == 3);
    CHECK(bo.steps[0].tag == StepTag::bose_negative);
    CHECK(bo.steps[0].rule_case == 4);
    CHECK(bo.steps[0].cone == 4);
    CHECK(bo.steps[1].rule_case == 3);
    // Both corner cones of vertex 2 are empty or outside, and the deeper
    // corner line is the counterclockwise one here.
    CHECK(bo.steps[2].rule_case == 5);
    CHECK(bo.steps[2].line.dir6 == 1);
  }
}

TEST_CASE("positive route records its split vertex and shortcut") {
  // 0 = goal, 1 = start below it, 2 and 3 = forward chain drifting out of
  // the goal's cone, after which the boundary walk pinches straight to 0.
  ThetaGraph g = full6({{0.0, 0.0}, {0.3, -2.0}, {0.55, -1.1}, {0.75, -0.3}});
  RouteTrace tr = positive_route(g, 1, 0);
  CHECK(tr.status == RouteStatus::arrived);
  CHECK(visited(tr) == std::vector<int32_t>{1, 2, 3, 0});
  REQUIRE(tr.steps.size() == 3);
  CHECK(tr.steps[0].rule_case == 10);
  CHECK(tr.steps[1].rule_case == 10);
  CHECK(tr.steps[2].rule_case == 12);
  CHECK(tr.steps[2].tag == StepTag::side);
  CHECK(tr.steps[2].line.dir6 == 5);
  CHECK(tr.steps[2].travel_sign == -1);
  CHECK(tr.split_point == 3);
  CHECK(tr.ratio <= 2.0 + 1e-9);

  SUBCASE("parity dispatch hands even pairs to the same walk") {
    RouteTrace au = theta6_auto_route(g, 1, 0);
    CHECK(au.status == RouteStatus::arrived);
    CHECK(visited(au) == visited(tr));
  }

  SUBCASE("parity dispatch mirrors odd pairs onto the other half") {
    RouteTrace au = theta6_auto_route(g, 0, 1);
    CHECK(au.status == RouteStatus::arrived);
    CHECK(visited(au) == std::vector<int32_t>{0, 2, 1});
    for (const StepRecord& rec : au.steps) CHECK(rec.tag == StepTag::forward);
    CHECK(au.ratio <= 2.0 + 1e-9);
  }
}

TEST_CASE("side step crosses a lone triangle and honors the goal pinch") {
  ThetaGraph full = full6({{0.0, 0.0}, {1.0, 0.1}, {0.5, 0.8}});
  ThetaGraph even = half_graph(full, 0);
  FaceList faces = extract_faces(even);
  REQUIRE(faces.face_count() == 1);
  const OrientedConeLine line{full.pts[2], 1};

  SideStepResult with_goal = side_step(even, faces, 0, line, 1, 2);
  CHECK(with_goal.next == 2);
  CHECK(with_goal.shortcut);

  SideStepResult without_goal = side_step(even, faces, 0, line, 1, -1);
  CHECK(without_goal.next == 2);
  CHECK_FALSE(without_goal.shortcut);
  CHECK(without_goal.face[0] >= 0);
}

TEST_CASE("side step reports an exhausted corridor on a faceless path") {
  ThetaGraph full = full6({{0.0, 0.0}, {-0.5, 1.0}, {0.05, 2.0}});
  ThetaGraph even = half_graph(full, 0);
  FaceList faces = extract_faces(even);
  REQUIRE(faces.face_count() == 0);
  SideStepResult r = side_step(even, faces, 1, OrientedConeLine{full.pts[2], 1}, -1, -1);
  CHECK(r.exhausted);
}

TEST_CASE("neighborhood view refuses vertices beyond the neighborhood") {
  ThetaGraph full = full6({{0.0, 0.0}, {0.2, 1.0}, {-0.3, 0.7}, {0.4, 0.8}, {0.7, 0.5}});
  ThetaGraph even = half_graph(full, 0);
  NeighborhoodView view(even, 1);
  CHECK(view.position(2).x == even.pts[2].x);
  CHECK(view.position(1).y == even.pts[1].y);
  CHECK_THROWS_AS(view.position(0), ContractViolation);
  CHECK_THROWS_AS(view.position(4), ContractViolation);
}

TEST_CASE("route with equal endpoints is an empty arrival") {
  ThetaGraph g = full6({{0.0, 0.0}, {0.2, 1.0}, {-0.3, 0.7}, {0.4, 0.8}, {0.7, 0.5}});
  for (Algorithm alg : {Algorithm::theta_k, Algorithm::positive, Algorithm::memoryless_negative,
                        Algorithm::constmem_negative, Algorithm::bose_negative,
                        Algorithm::theta6_auto}) {
    RouteTrace tr = route(alg, g, 2, 2);
    CHECK(tr.status == RouteStatus::arrived);
    CHECK(tr.steps.empty());
    CHECK(visited(tr) == std::vector<int32_t>{2});
    CHECK(tr.ratio == 1.0);
  }
}

TEST_CASE("contract errors on misuse") {
  ThetaGraph g = full6({{0.0, 0.0}, {0.2, 1.0}, {-0.3, 0.7}, {0.4, 0.8}, {0.7, 0.5}});
  // Vertex 0 sees vertex 1 in an even cone, so the reverse pair is odd.
  CHECK_THROWS_AS(positive_route(g, 1, 0), ContractViolation);
  ThetaGraph odd = half_graph(g, 1);
  CHECK_THROWS_AS(positive_route(odd, 0, 1), ContractViolation);
  CHECK_THROWS_AS(theta6_auto_route(odd, 0, 1), ContractViolation);
  CHECK_THROWS_AS(route(Algorithm::memoryless_negative, g, 0, 99), ContractViolation);
}

TEST_CASE("step limit cuts a route short") {
  ThetaGraph g = full6({{0.0, -2.0}, {0.1, -1.0}, {0.0, 0.0}});
  RouteOptions opts;
  opts.max_steps = 1;
  RouteTrace tr = memoryless_negative_route(g, 0, 2, opts);
  CHECK(tr.status == RouteStatus::step_limit);
  CHECK(tr.steps.size() == 1);
}

TEST_CASE("cone walk loops on a documented three-cone instance") {
  std::vector<Point> pts = {{4.2, 8.0}, {6.0, 0.0}, {4.9, 8.8}, {9.3, 9.9}};
  ThetaGraph g3 = build_theta_graph(pts, GraphSpec{GraphKind::theta, 3});
  RouteTrace tr = theta_route(g3, 0, 1);
  CHECK(tr.status == RouteStatus::loop_detected);
  CHECK(visited(tr) == std::vector<int32_t>{0, 3, 2, 3});
  for (const StepRecord& rec : tr.steps) CHECK(rec.tag == StepTag::theta);

  // The same sites with six cones deliver everywhere.
  ThetaGraph g6 = full6(pts);
  for (int32_t s = 0; s < 4; ++s) {
    for (int32_t t = 0; t < 4; ++t) {
      CHECK(theta_route(g6, s, t).status == RouteStatus::arrived);
    }
  }
}

TEST_CASE("algorithm names round-trip") {
  for (Algorithm a : {Algorithm::theta_k, Algorithm::positive, Algorithm::memoryless_negative,
                      Algorithm::constmem_negative, Algorithm::bose_negative,
                      Algorithm::theta6_auto}) {
    Algorithm parsed;
    REQUIRE(parse_algorithm(to_string(a), parsed));
    CHECK(parsed == a);
  }
  Algorithm unused;
  CHECK_FALSE(parse_algorithm("dijkstra", unused));
}

TEST_CASE("random interior pairs obey the worst-case ceilings") {
  const std::vector<Point> pts = refcheck::random_points(300, 808, 0.0, 10.0);
  ThetaGraph g = full6(pts);
  ThetaGraph even = half_graph(g, 0);
  ThetaGraph odd = half_graph(g, 1);
  FaceList f_even = extract_faces(even);
  FaceList f_odd = extract_faces(odd);
  RouteOptions opts;
  opts.even_faces = &f_even;
  opts.odd_faces = &f_odd;

  // Pairs drawn from the middle of the window keep most walks clear of
  // boundary effects.
  std::vector<int32_t> middle;
  for (int32_t v = 0; v < g.n(); ++v) {
    if (g.pts[v].x > 2.0 && g.pts[v].x < 8.0 && g.pts[v].y > 2.0 && g.pts[v].y < 8.0) {
      middle.push_back(v);
    }
  }
  REQUIRE(middle.size() > 50);

  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<size_t> pick(0, middle.size() - 1);
  const double neg_bound = 5.0 / kSqrt3 + 1e-9;

  int pairs = 0, arrived_pos = 0, arrived_auto = 0, arrived_mem = 0, arrived_cm = 0,
      arrived_bose = 0, arrived_theta = 0, divergences = 0;
  while (pairs < 150) {
    const int32_t s = middle[pick(rng)];
    const int32_t t = middle[pick(rng)];
    if (s == t) continue;
    ++pairs;

    RouteTrace au = theta6_auto_route(g, s, t, opts);
    if (au.status == RouteStatus::arrived) {
      ++arrived_auto;
      CHECK(au.ratio <= 2.0 + 1e-9);
    }
    if (cone_index(g.pts[s], g.pts[t], 6) % 2 == 0) {
      RouteTrace po = positive_route(g, s, t, opts);
      if (po.status == RouteStatus::arrived) {
        ++arrived_pos;
        CHECK(po.ratio <= 2.0 + 1e-9);
      }
      CHECK(visited(po) == visited(au));
    }

    RouteTrace mem = memoryless_negative_route(g, s, t, opts);
    RouteTrace mem2 = memoryless_negative_route(g, s, t, opts);
    CHECK(visited(mem) == visited(mem2));
    if (mem.status == RouteStatus::arrived) {
      ++arrived_mem;
      CHECK(mem.ratio <= neg_bound);
    }

    RouteTrace cm = constmem_negative_route(g, s, t, opts);
    if (cm.status == RouteStatus::arrived) {
      ++arrived_cm;
      CHECK(cm.ratio <= neg_bound);
    }

    RouteTrace bo = bose_negative_route(g, s, t, opts);
    if (bo.status == RouteStatus::arrived) {
      ++arrived_bose;
      CHECK(bo.ratio <= neg_bound);
    }

    // The corner-occupancy variant can only leave the baseline path where
    // the baseline turned at an occupied-corner decision.
    const size_t common = std::min(mem.steps.size(), bo.steps.size());
    for (size_t idx = 0; idx < common; ++idx) {
      if (mem.steps[idx].to != bo.steps[idx].to) {
        ++divergences;
        CHECK(mem.steps[idx].rule_case == 2);
        CHECK(bo.steps[idx].rule_case == 5);
        break;
      }
    }

    RouteTrace th = theta_route(g, s, t, opts);
    if (th.status == RouteStatus::arrived) ++arrived_theta;
  }

  CHECK(arrived_auto >= pairs * 9 / 10);
  CHECK(arrived_mem >= pairs * 8 / 10);
  CHECK(arrived_cm >= pairs * 8 / 10);
  CHECK(arrived_bose >= pairs * 8 / 10);
  CHECK(arrived_theta >= pairs * 9 / 10);
  CHECK(arrived_pos > 30);
}
