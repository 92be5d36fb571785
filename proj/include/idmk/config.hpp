#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "idmk/evaluate.hpp"

namespace idmk {

// Whole-pipeline configuration, loaded from an INI-style text file:
// [section] headers, key = value lines, # comments. Unknown sections or
// keys are rejected with their line number. Every field has the default
// shown here; a missing file section keeps the defaults.
struct RunConfig {
  // [env]
  ActionSpace space;
  EnvParams env;
  Scalar sigma = 0.0;
  std::vector<HazardRegion> hazards;

  // [window]
  WindowSpec window;  // skip is set from [selector] K
  int stride = 1;

  // [train]
  TrainConfig train;

  // [selector]
  SelectorParams selector;

  // [eval]
  int n_seeds = 10;
  std::uint64_t base_seed = 1000;
  Scalar r_fi = 2.0;
  bool dtw_aligned = false;

  // [data]
  std::vector<ScenarioId> scenarios = all_scenarios();
  int n_per = 12;
  std::uint64_t data_seed = 7;
  Scalar jitter = 0.1;

  // [paths]
  std::string data_dir;
  std::string run_dir;
  std::string checkpoint;

  void validate() const;

  GenConfig gen_config() const;
  InputSpec input_spec() const;
  DatasetSpec dataset_spec() const;
  RolloutConfig rollout_config() const;
  EvalConfig eval_config(int jobs) const;
};

// Throws std::invalid_argument with a line reference on malformed lines,
// unknown keys, or unparsable values.
RunConfig parse_config(const std::string& text);
RunConfig load_config_file(const std::filesystem::path& path);

// Fixed-order serialization of every effective value; two configs hash
// equal iff this string is equal.
std::string canonical_config(const RunConfig& cfg);

// FNV-1a 64 of the canonical form, as 16 hex digits. Recorded in every
// output manifest.
std::string config_hash(const RunConfig& cfg);

// Shortest round-trip decimal form of a double (used by every CSV and
// canonical dump so outputs are byte-stable).
std::string scalar_str(Scalar v);

}  // namespace idmk
