#pragma once

#include <span>
#include <string>
#include <vector>

#include "idmk/env.hpp"
#include "idmk/types.hpp"

namespace idmk {

// Closed set of scripted routes. The crossroads triplet shares an
// identical 35-step approach before branching; loop revisits its start;
// pause-then-go holds still for 25 steps before moving.
enum class ScenarioId {
  kCrossroadsLeft,
  kCrossroadsRight,
  kCrossroadsMid,
  kWinding0,
  kWinding1,
  kWinding2,
  kLoop,
  kPauseThenGo,
};

inline constexpr int kScenarioCount = 8;

const char* scenario_name(ScenarioId id);
// Throws std::invalid_argument for names outside the closed set.
ScenarioId scenario_from_name(const std::string& name);
std::vector<ScenarioId> all_scenarios();
// Parses a comma-separated list; "all" yields every scenario.
std::vector<ScenarioId> parse_scenario_list(const std::string& csv);

int scenario_length(ScenarioId id);

// Pre-discretization controller command emitted by a scenario script.
struct StickCommand {
  Scalar x = 0.0;
  Scalar y = 0.0;
  bool boost = false;  // button 0
  bool aux = false;    // button 1, recorded no-op
};

StickCommand scenario_command(ScenarioId id, int t);

// Shared knobs for reference and dataset generation. skip is the
// training-time look-ahead used when recording observations: step t's
// observation references index min(t + skip, T-1).
struct GenConfig {
  ActionSpace space;
  ObsSpec obs;
  int skip = 10;
  EnvParams env;
  Scalar jitter = 0.1;  // uniform stick perturbation half-width for datasets
};

// Runs the scenario script through the deterministic dynamics (sigma
// forced to 0), then fills in observations with the static look-ahead.
Trajectory make_reference(ScenarioId id, std::uint64_t seed, const GenConfig& cfg);

// Demonstration set: n_per jittered expert runs per scenario, seeded per
// (scenario, run). Throws if n_per <= 0.
std::vector<Trajectory> generate_dataset(std::span<const ScenarioId> scenarios, int n_per,
                                         std::uint64_t seed, const GenConfig& cfg);

}  // namespace idmk
