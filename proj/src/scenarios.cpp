#include "idmk/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "idmk/codec.hpp"
#include "idmk/rng.hpp"

namespace idmk {

namespace {

// Cruise stick amplitude; an exact bin-8 center so mirrored legs cancel
// exactly and the loop script lands back on its start point.
constexpr Scalar kCruise = 6.0 / 11.0;
constexpr Scalar kHalfCruise = 4.0 / 11.0;

constexpr int kCrossroadsPrefix = 35;

}  // namespace

const char* scenario_name(ScenarioId id) {
  switch (id) {
    case ScenarioId::kCrossroadsLeft: return "crossroads-left";
    case ScenarioId::kCrossroadsRight: return "crossroads-right";
    case ScenarioId::kCrossroadsMid: return "crossroads-mid";
    case ScenarioId::kWinding0: return "winding-0";
    case ScenarioId::kWinding1: return "winding-1";
    case ScenarioId::kWinding2: return "winding-2";
    case ScenarioId::kLoop: return "loop";
    case ScenarioId::kPauseThenGo: return "pause-then-go";
  }
  throw std::invalid_argument("scenario_name: bad id");
}

ScenarioId scenario_from_name(const std::string& name) {
  for (const ScenarioId id : all_scenarios()) {
    if (name == scenario_name(id)) {
      return id;
    }
  }
  throw std::invalid_argument("unknown scenario: \"" + name + "\"");
}

std::vector<ScenarioId> all_scenarios() {
  return {ScenarioId::kCrossroadsLeft, ScenarioId::kCrossroadsRight, ScenarioId::kCrossroadsMid,
          ScenarioId::kWinding0,       ScenarioId::kWinding1,        ScenarioId::kWinding2,
          ScenarioId::kLoop,           ScenarioId::kPauseThenGo};
}

std::vector<ScenarioId> parse_scenario_list(const std::string& csv) {
  if (csv == "all") {
    return all_scenarios();
  }
  std::vector<ScenarioId> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(scenario_from_name(item));
  }
  if (out.empty()) {
    throw std::invalid_argument("empty scenario list");
  }
  return out;
}

int scenario_length(ScenarioId id) {
  switch (id) {
    case ScenarioId::kCrossroadsLeft:
    case ScenarioId::kCrossroadsRight:
    case ScenarioId::kCrossroadsMid: return 100;
    case ScenarioId::kWinding0:
    case ScenarioId::kWinding1:
    case ScenarioId::kWinding2: return 120;
    case ScenarioId::kLoop: return 100;
    case ScenarioId::kPauseThenGo: return 80;
  }
  throw std::invalid_argument("scenario_length: bad id");
}

StickCommand scenario_command(ScenarioId id, int t) {
  using std::numbers::pi;
  StickCommand c;
  switch (id) {
    case ScenarioId::kCrossroadsLeft:
    case ScenarioId::kCrossroadsRight:
    case ScenarioId::kCrossroadsMid:
      if (t < kCrossroadsPrefix) {
        c.x = kCruise;
      } else if (id == ScenarioId::kCrossroadsLeft) {
        c.x = kHalfCruise;
        c.y = kCruise;
      } else if (id == ScenarioId::kCrossroadsRight) {
        c.x = kHalfCruise;
        c.y = -kCruise;
      } else {
        c.x = kCruise;
      }
      break;
    case ScenarioId::kWinding0:
      c.x = kCruise;
      c.y = 0.8 * std::sin(2.0 * pi * t / 40.0);
      break;
    case ScenarioId::kWinding1:
      c.x = kCruise;
      c.y = 0.7 * std::sin(2.0 * pi * t / 30.0 + pi / 3.0);
      break;
    case ScenarioId::kWinding2:
      c.x = kCruise;
      c.y = 0.9 * std::sin(2.0 * pi * t / 50.0 + pi / 2.0);
      c.boost = t >= 40 && t < 60;
      break;
    case ScenarioId::kLoop:
      // Four mirrored 15-step legs (east, north, west, south) whose stick
      // sums cancel per axis, then a 40-step coast that converges back
      // onto the start point.
      if (t < 15) {
        c.x = kCruise;
      } else if (t < 30) {
        c.y = kCruise;
      } else if (t < 45) {
        c.x = -kCruise;
      } else if (t < 60) {
        c.y = -kCruise;
      }
      break;
    case ScenarioId::kPauseThenGo:
      if (t < 25) {
        c.aux = true;
      } else {
        c.x = kCruise;
      }
      break;
  }
  return c;
}

namespace {

Action command_to_action(const StickCommand& c, const ActionSpace& space) {
  Action a = neutral_action(space);
  if (space.buttons >= 1) {
    a.buttons[0] = c.boost ? 1 : 0;
  }
  if (space.buttons >= 2) {
    a.buttons[1] = c.aux ? 1 : 0;
  }
  if (space.sticks >= 1) {
    a.sticks[0] = discretize_stick(c.x);
  }
  if (space.sticks >= 2) {
    a.sticks[1] = discretize_stick(c.y);
  }
  return a;
}

// Expert rollout in the deterministic environment. jitter_rng, when
// non-null, perturbs each stick command uniformly before discretization.
Trajectory expert_rollout(ScenarioId id, std::uint64_t seed, const GenConfig& cfg,
                          Rng* jitter_rng) {
  const int T = scenario_length(id);
  const StochasticitySpec quiet;
  std::vector<EnvState> states;
  states.reserve(static_cast<std::size_t>(T));

  Trajectory tr;
  tr.meta.scenario = scenario_name(id);
  tr.meta.seed = seed;
  tr.steps.reserve(static_cast<std::size_t>(T));

  EnvState state;
  for (int t = 0; t < T; ++t) {
    StickCommand c = scenario_command(id, t);
    if (jitter_rng != nullptr) {
      c.x += uniform_in(*jitter_rng, -cfg.jitter, cfg.jitter);
      c.y += uniform_in(*jitter_rng, -cfg.jitter, cfg.jitter);
    }
    TrajectoryStep s;
    s.t = t;
    s.pos = state.pos;
    s.action = command_to_action(c, cfg.space);
    states.push_back(state);
    state = env_step(state, s.action, cfg.env, quiet);
    tr.steps.push_back(std::move(s));
  }

  const int last = T - 1;
  for (int t = 0; t < T; ++t) {
    const int fut = std::min(t + cfg.skip, last);
    tr.steps[static_cast<std::size_t>(t)].obs = observe(states[static_cast<std::size_t>(t)], tr, fut, cfg.obs);
  }
  return tr;
}

}  // namespace

Trajectory make_reference(ScenarioId id, std::uint64_t seed, const GenConfig& cfg) {
  return expert_rollout(id, seed, cfg, nullptr);
}

std::vector<Trajectory> generate_dataset(std::span<const ScenarioId> scenarios, int n_per,
                                         std::uint64_t seed, const GenConfig& cfg) {
  if (n_per <= 0) {
    throw std::invalid_argument("generate_dataset: n_per must be > 0");
  }
  if (scenarios.empty()) {
    throw std::invalid_argument("generate_dataset: no scenarios");
  }
  std::vector<Trajectory> out;
  out.reserve(scenarios.size() * static_cast<std::size_t>(n_per));
  for (std::size_t si = 0; si < scenarios.size(); ++si) {
    const auto id = scenarios[si];
    for (int i = 0; i < n_per; ++i) {
      const std::uint64_t run_seed =
          derive_seed(seed, static_cast<std::uint64_t>(id) * 1000 + static_cast<std::uint64_t>(i));
      Rng jitter_rng(run_seed);
      out.push_back(expert_rollout(id, run_seed, cfg, &jitter_rng));
    }
  }
  return out;
}

}  // namespace idmk
