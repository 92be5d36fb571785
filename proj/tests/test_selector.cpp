#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "idmk/rng.hpp"
#include "idmk/selector.hpp"

using namespace idmk;

namespace {

Trajectory points(std::vector<Position> pts) {
  Trajectory tr;
  tr.meta = {"fixture", 0};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    TrajectoryStep s;
    s.t = static_cast<int>(i);
    s.pos = pts[i];
    s.action = {{0, 0}, {5, 5}};
    tr.steps.push_back(s);
  }
  return tr;
}

Trajectory random_walk(Rng& rng, int len, Scalar step) {
  std::vector<Position> pts;
  Position p{uniform_in(rng, -10.0, 10.0), uniform_in(rng, -10.0, 10.0), 0.0};
  for (int i = 0; i < len; ++i) {
    pts.push_back(p);
    p.x += uniform_in(rng, -step, step);
    p.y += uniform_in(rng, -step, step);
  }
  return points(pts);
}

int brute_force_closest(const Trajectory& ref, const Position& pos) {
  int best = 0;
  Scalar best_d = distance(ref.pos_at(0), pos);
  for (int i = 1; i < ref.length(); ++i) {
    const Scalar d = distance(ref.pos_at(i), pos);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("static_select frozen points") {
  CHECK(static_select(7, 10, 100) == 17);
  CHECK(static_select(0, 0, 100) == 0);
  CHECK(static_select(95, 10, 100) == 99);
  CHECK(static_select(200, 10, 100) == 99);
}

TEST_CASE("static_select over random (t, K) never leaves range") {
  Rng rng(31);
  for (int i = 0; i < 10000; ++i) {
    const int T = 1 + static_cast<int>(uniform_index(rng, 300));
    const int t = static_cast<int>(uniform_index(rng, 400));
    const int K = static_cast<int>(uniform_index(rng, 40));
    const int out = static_select(t, K, T);
    CHECK(out == std::min(t + K, T - 1));
    CHECK(out >= 0);
    CHECK(out < T);
  }
}

TEST_CASE("closest_select on exact hits and ties") {
  const auto ref = points({{0, 0, 0}, {2, 0, 0}, {4, 0, 0}, {6, 0, 0}, {8, 0, 0},
                           {10, 0, 0}, {12, 0, 0}, {14, 0, 0}, {16, 0, 0}, {18, 0, 0}});
  CHECK(closest_select(ref, {6.0, 0.0, 0.0}, 5) == 8);  // at tau(3), +K
  CHECK(closest_select(ref, {6.0, 0.0, 0.0}, 0) == 3);
  // equidistant from tau(2) and tau(3): smallest index wins
  CHECK(closest_select(ref, {5.0, 0.0, 0.0}, 0) == 2);
  // +K clamps at the end
  CHECK(closest_select(ref, {18.0, 0.0, 0.0}, 5) == 9);
}

TEST_CASE("closest_select matches the linear-scan oracle on random configurations") {
  Rng rng(77);
  for (int trial = 0; trial < 400; ++trial) {
    const int len = 2 + static_cast<int>(uniform_index(rng, 60));
    const auto ref = random_walk(rng, len, 1.0);
    for (int q = 0; q < 25; ++q) {
      const Position pos{uniform_in(rng, -15.0, 15.0), uniform_in(rng, -15.0, 15.0), 0.0};
      const int K = static_cast<int>(uniform_index(rng, 12));
      CHECK(closest_select(ref, pos, K) ==
            std::min(brute_force_closest(ref, pos) + K, ref.length() - 1));
    }
  }
}

TEST_CASE("closest_select is translation covariant") {
  Rng rng(5);
  auto ref = random_walk(rng, 40, 1.0);
  const Position pos{3.0, -2.0, 0.0};
  const int before = closest_select(ref, pos, 4);
  for (auto& s : ref.steps) {
    s.pos.x += 100.0;
    s.pos.y -= 55.5;
  }
  CHECK(closest_select(ref, {103.0, -57.5, 0.0}, 4) == before);
}

TEST_CASE("radius_update advances inclusively at the boundary") {
  const auto ref = points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}});
  CHECK(radius_update(1, ref, {1.0, 0.0, 0.0}, 1.0) == 2);  // distance 0
  CHECK(radius_update(1, ref, {6.0, 0.0, 0.0}, 1.0) == 1);  // distance 5
  CHECK(radius_update(1, ref, {2.0, 0.0, 0.0}, 1.0) == 2);  // distance exactly r
  CHECK(radius_update(3, ref, {3.0, 0.0, 0.0}, 1.0) == 3);  // clamped at T-1
}

TEST_CASE("inner_outer_update three cases") {
  const auto ref = points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {3, 0, 0}, {20, 0, 0}});
  // d > r_out: hold
  CHECK(inner_outer_update(0, ref, {10.0, 0.0, 0.0}, 1.0, 3.0) == 0);
  // r_in <= d <= r_out: +1
  CHECK(inner_outer_update(0, ref, {2.0, 0.0, 0.0}, 1.0, 3.0) == 1);
  // boundary d == r_out still advances
  CHECK(inner_outer_update(0, ref, {3.0, 0.0, 0.0}, 1.0, 3.0) == 1);
  // boundary d == r_in is case 2 (strict < for the inner test)
  CHECK(inner_outer_update(0, ref, {1.0, 0.0, 0.0}, 1.0, 3.0) == 1);
}

TEST_CASE("inner_outer_update jumps past a dense cluster in one call") {
  // four consecutive points inside r_in of the agent, then a far one
  const auto ref = points({{0, 0, 0}, {0.1, 0, 0}, {0.2, 0, 0}, {0.3, 0, 0}, {9, 0, 0}});
  const int out = inner_outer_update(0, ref, {0.0, 0.0, 0.0}, 1.0, 3.0);
  CHECK(out == 4);  // skipped all four near points
  // and if the whole tail is inside r_in it stops at T-1
  const auto tight = points({{0, 0, 0}, {0.1, 0, 0}, {0.2, 0, 0}});
  CHECK(inner_outer_update(0, tight, {0.0, 0.0, 0.0}, 1.0, 3.0) == 2);
}

TEST_CASE("selector params validate") {
  SelectorParams p;
  p.validate();
  p.skip = -1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.skip = 0;
  p.radius = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.radius = 1.0;
  p.strategy = Strategy::kInnerOuter;
  p.inner = 5.0;
  p.outer = 2.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.inner = 0.0;
  p.outer = 2.0;
  p.validate();
}

TEST_CASE("strategy names round-trip") {
  for (Strategy s : {Strategy::kStatic, Strategy::kClosest, Strategy::kRadius,
                     Strategy::kInnerOuter}) {
    CHECK(strategy_from_name(strategy_name(s)) == s);
  }
  CHECK_THROWS_AS(strategy_from_name("nearest"), std::invalid_argument);
}

TEST_CASE("RolloutSelector: static dispatch matches static_select") {
  Rng rng(9);
  const auto ref = random_walk(rng, 50, 1.0);
  SelectorParams p;
  p.strategy = Strategy::kStatic;
  p.skip = 7;
  RolloutSelector sel(p, ref);
  for (int t = 0; t < 60; ++t) {
    const Position pos{uniform_in(rng, -5.0, 5.0), 0.0, 0.0};
    CHECK(sel.select(t, pos) == static_select(t, 7, ref.length()));
  }
  CHECK(sel.trace().size() == 60);
}

TEST_CASE("RolloutSelector: radius glued to the reference counts K, K+1, K+2, ...") {
  const int len = 30;
  std::vector<Position> pts;
  for (int i = 0; i < len; ++i) {
    pts.push_back({static_cast<Scalar>(i), 0.0, 0.0});
  }
  const auto ref = points(pts);
  SelectorParams p;
  p.strategy = Strategy::kRadius;
  p.skip = 10;
  p.radius = 100.0;  // always within range, so it advances every step
  RolloutSelector sel(p, ref);
  for (int t = 0; t < 10; ++t) {
    CHECK(sel.select(t, ref.pos_at(t)) == 10 + t);
  }
}

TEST_CASE("RolloutSelector: radius pointer initializes at min(K, T-1)") {
  const auto ref = points({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  SelectorParams p;
  p.strategy = Strategy::kRadius;
  p.skip = 10;
  RolloutSelector sel(p, ref);
  CHECK(sel.current() == 2);
}

TEST_CASE("RolloutSelector: radius and inner_outer are monotone and bounded") {
  Rng rng(44);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = 5 + static_cast<int>(uniform_index(rng, 40));
    const auto ref = random_walk(rng, len, 0.8);
    SelectorParams p;
    p.strategy = (trial % 2 == 0) ? Strategy::kRadius : Strategy::kInnerOuter;
    p.skip = static_cast<int>(uniform_index(rng, 6));
    p.radius = uniform_in(rng, 0.5, 4.0);
    p.inner = uniform_in(rng, 0.0, 1.0);
    p.outer = p.inner + uniform_in(rng, 0.1, 3.0);
    RolloutSelector sel(p, ref);
    int prev = -1;
    for (int t = 0; t < 30; ++t) {
      const Position pos{uniform_in(rng, -12.0, 12.0), uniform_in(rng, -12.0, 12.0), 0.0};
      const int fut = sel.select(t, pos);
      CHECK(fut >= prev);
      CHECK(fut >= 0);
      CHECK(fut < ref.length());
      prev = fut;
    }
  }
}

TEST_CASE("InnerOuter(0, r) is trace-identical to Radius(r) on random walks") {
  Rng rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const int len = 5 + static_cast<int>(uniform_index(rng, 40));
    const auto ref = random_walk(rng, len, 0.8);
    const Scalar r = uniform_in(rng, 0.3, 4.0);
    const int K = static_cast<int>(uniform_index(rng, 6));

    SelectorParams pr;
    pr.strategy = Strategy::kRadius;
    pr.skip = K;
    pr.radius = r;
    SelectorParams pio;
    pio.strategy = Strategy::kInnerOuter;
    pio.skip = K;
    pio.inner = 0.0;
    pio.outer = r;

    RolloutSelector a(pr, ref);
    RolloutSelector b(pio, ref);
    Rng walk(derive_seed(202, trial));
    for (int t = 0; t < 25; ++t) {
      const Position pos{uniform_in(walk, -12.0, 12.0), uniform_in(walk, -12.0, 12.0), 0.0};
      CHECK(a.select(t, pos) == b.select(t, pos));
    }
    REQUIRE(a.trace().size() == b.trace().size());
    for (std::size_t i = 0; i < a.trace().size(); ++i) {
      CHECK(a.trace()[i].t == b.trace()[i].t);
      CHECK(a.trace()[i].fut_idx == b.trace()[i].fut_idx);
      CHECK(a.trace()[i].dist == b.trace()[i].dist);
    }
  }
}

TEST_CASE("trace records the emitted index and its distance") {
  const auto ref = points({{0, 0, 0}, {3, 0, 0}, {6, 0, 0}});
  SelectorParams p;
  p.strategy = Strategy::kRadius;
  p.skip = 0;
  p.radius = 1.0;
  RolloutSelector sel(p, ref);
  sel.select(0, {0.5, 0.0, 0.0});   // d=0.5 <= 1: advances after emitting 0
  sel.select(1, {10.0, 0.0, 0.0});  // d to tau(1) = 7: holds
  const auto& tr = sel.trace();
  REQUIRE(tr.size() == 2);
  CHECK(tr[0].t == 0);
  CHECK(tr[0].fut_idx == 0);
  CHECK(tr[0].dist == 0.5);
  CHECK(tr[1].t == 1);
  CHECK(tr[1].fut_idx == 1);
  CHECK(tr[1].dist == 7.0);
}
