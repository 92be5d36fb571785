#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include "idmk/jsonl.hpp"
#include "idmk/types.hpp"

using namespace idmk;

namespace {

TrajectoryStep make_step(int t, Scalar x, Scalar y) {
  TrajectoryStep s;
  s.t = t;
  s.pos = {x, y, 0.0};
  s.obs = {x, y, 0.0, 0.0};
  s.action = {{0, 0}, {5, 5}};
  return s;
}

Trajectory make_valid(int len) {
  Trajectory tr;
  tr.meta = {"fixture", 9};
  for (int t = 0; t < len; ++t) {
    tr.steps.push_back(make_step(t, 0.25 * t, -0.5 * t));
  }
  return tr;
}

}  // namespace

TEST_CASE("single-step trajectory validates clean") {
  CHECK(validate_trajectory(make_valid(1)).empty());
  CHECK(validate_trajectory(make_valid(7)).empty());
}

TEST_CASE("empty trajectory is a violation") {
  const auto v = validate_trajectory(Trajectory{});
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "trajectory is empty");
}

TEST_CASE("non-contiguous timestamps name the offending index") {
  auto tr = make_valid(3);
  tr.steps[1].t = 2;
  const auto v = validate_trajectory(tr);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "step 1: timestamp 2, expected 1");
}

TEST_CASE("non-finite observation names the step") {
  auto tr = make_valid(4);
  tr.steps[2].obs[1] = std::numeric_limits<Scalar>::quiet_NaN();
  const auto v = validate_trajectory(tr);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == "step 2: non-finite obs value");
}

TEST_CASE("all violations are reported, not just the first") {
  auto tr = make_valid(5);
  tr.steps[1].t = 9;
  tr.steps[2].pos.x = std::numeric_limits<Scalar>::infinity();
  tr.steps[3].obs.push_back(0.0);
  tr.steps[4].action.sticks[0] = 11;
  const auto v = validate_trajectory(tr);
  CHECK(v.size() == 4);
}

TEST_CASE("action shape and range violations are caught") {
  auto tr = make_valid(3);
  tr.steps[1].action.buttons.push_back(0);
  tr.steps[2].action.sticks[1] = -1;
  const auto v = validate_trajectory(tr);
  REQUIRE(v.size() == 2);
  CHECK(v[0] == "step 1: action shape differs from step 0");
  CHECK(v[1] == "step 2: stick bin -1 outside [0, 10]");
}

TEST_CASE("jsonl round-trip is exact, including awkward doubles") {
  auto tr = make_valid(6);
  tr.steps[0].pos = {0.1, -0.3, 0.0};
  tr.steps[1].obs = {1.0 / 3.0, 1e-17, -2.5e108, 0.15};
  tr.steps[2].action = {{1, 0}, {0, 10}};
  for (std::size_t i = 1; i < tr.steps.size(); ++i) {
    tr.steps[i].obs = tr.steps[1].obs;
  }

  std::stringstream buf;
  write_trajectory(buf, tr);
  const Trajectory back = read_trajectory(buf);

  CHECK(back.meta.scenario == tr.meta.scenario);
  CHECK(back.meta.seed == tr.meta.seed);
  REQUIRE(back.steps.size() == tr.steps.size());
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    CHECK(back.steps[i].t == tr.steps[i].t);
    CHECK(back.steps[i].pos.x == tr.steps[i].pos.x);
    CHECK(back.steps[i].pos.y == tr.steps[i].pos.y);
    CHECK(back.steps[i].pos.z == tr.steps[i].pos.z);
    CHECK(back.steps[i].obs == tr.steps[i].obs);
    CHECK(back.steps[i].action == tr.steps[i].action);
  }
}

TEST_CASE("jsonl write is byte-stable") {
  const auto tr = make_valid(5);
  std::stringstream a;
  std::stringstream b;
  write_trajectory(a, tr);
  write_trajectory(b, tr);
  CHECK(a.str() == b.str());
  CHECK(a.str().find("\"scenario\"") != std::string::npos);
}

TEST_CASE("jsonl reader rejects malformed input with line numbers") {
  std::stringstream empty;
  CHECK_THROWS_WITH_AS(read_trajectory(empty), "trajectory stream is empty", std::runtime_error);

  std::stringstream bad_header("not json\n");
  CHECK_THROWS_WITH_AS(read_trajectory(bad_header), "trajectory line 1: malformed JSON",
                       std::runtime_error);

  std::stringstream missing("{\"scenario\":\"x\",\"seed\":1,\"obs_dim\":2,\"buttons\":2}\n");
  CHECK_THROWS_WITH_AS(read_trajectory(missing), "trajectory line 1: missing field \"sticks\"",
                       std::runtime_error);

  auto tr = make_valid(2);
  std::stringstream buf;
  write_trajectory(buf, tr);
  std::string text = buf.str();
  const auto second_row = text.rfind("{\"buttons\"");
  REQUIRE(second_row != std::string::npos);
  std::stringstream truncated(text.substr(0, second_row) + "{\"t\":1}\n");
  CHECK_THROWS_AS(read_trajectory(truncated), std::runtime_error);
}

TEST_CASE("jsonl reader checks dimension agreement against the header") {
  auto tr = make_valid(3);
  std::stringstream buf;
  write_trajectory(buf, tr);
  std::string text = buf.str();
  const auto pos = text.find("\"obs_dim\":4");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 11, "\"obs_dim\":3");
  std::stringstream tampered(text);
  CHECK_THROWS_AS(read_trajectory(tampered), std::runtime_error);
}

TEST_CASE("missing file names the path") {
  CHECK_THROWS_AS(read_trajectory_file("/nonexistent/place/tr.jsonl"), std::runtime_error);
}

TEST_CASE("positions_of preserves order") {
  const auto tr = make_valid(4);
  const auto pts = positions_of(tr);
  REQUIRE(pts.size() == 4);
  CHECK(pts[3].x == tr.steps[3].pos.x);
  CHECK(pts[3].y == tr.steps[3].pos.y);
}
