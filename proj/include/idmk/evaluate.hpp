#pragma once

#include <span>
#include <string>
#include <vector>

#include "idmk/rollout.hpp"
#include "idmk/scenarios.hpp"
#include "idmk/train.hpp"

namespace idmk {

struct RolloutJob {
  const Trajectory* ref = nullptr;
  std::uint64_t seed = 0;
};

// Independent rollouts collected by job index, so the output order is a
// pure function of the job list. The _serial variant is the plain-loop
// reference; the _parallel variant distributes jobs over an OpenMP team.
// Results are identical (modulo wall_time_s, which is diagnostic).
std::vector<RolloutResult> run_rollout_batch_serial(const Policy& policy,
                                                    std::span<const RolloutJob> jobs,
                                                    const RolloutConfig& cfg);
std::vector<RolloutResult> run_rollout_batch_parallel(const Policy& policy,
                                                      std::span<const RolloutJob> jobs,
                                                      const RolloutConfig& cfg, int n_workers);

struct EvalConfig {
  RolloutConfig rollout;
  int n_seeds = 10;
  std::uint64_t base_seed = 1000;
  int jobs = 1;
};

struct EvalRow {
  std::string scenario;
  std::uint64_t seed = 0;
  std::string strategy;
  MetricReport metrics;
};

struct MedianRow {
  std::string scenario;
  std::string strategy;
  Scalar median_auc = 0.0;
  Scalar median_fi = 0.0;
  Scalar median_dtw = 0.0;
};

struct EvalTable {
  std::vector<EvalRow> rows;       // scenario-major, seed-minor
  std::vector<MedianRow> medians;  // one per scenario
};

// Rollout seeds are base_seed + i for i in [0, n_seeds); every reference
// is scored across the same seed list and summarized by medians.
EvalTable evaluate(const Policy& policy, std::span<const Trajectory> refs, const EvalConfig& cfg);

// Demonstration-set recipe. Window ablations regenerate their training
// data from this spec so each configuration's observations match its own
// future window (the scripted experts ignore observations, so positions
// and actions are identical across configurations).
struct DatasetSpec {
  std::vector<ScenarioId> scenarios;
  int n_per = 12;
  std::uint64_t seed = 7;
  ActionSpace space;
  EnvParams env;
  int stride = 1;
  Scalar jitter = 0.1;

  GenConfig gen_config(const WindowSpec& window) const;
};

struct AblationConfig {
  std::string label;
  WindowSpec window;
  FeatureMask mask;
};

// The window grid (behavior cloning through full windows) plus the two
// modality ablations at the full window.
std::vector<AblationConfig> standard_ablations(int skip);

struct AblationResult {
  AblationConfig config;
  LossBreakdown final_epoch;
  EvalTable eval;
};

// Trains one model per configuration (shared training seed) and evaluates
// each on references for eval_scenarios under the configured selector.
std::vector<AblationResult> ablate_windows(const DatasetSpec& data,
                                           std::span<const AblationConfig> configs,
                                           const ModelShape& shape, const TrainConfig& train_cfg,
                                           const EvalConfig& eval_cfg,
                                           std::span<const ScenarioId> eval_scenarios);

struct SweepRow {
  std::string strategy;
  Scalar radius = 0.0;  // Radius gate, or 0 for inner_outer rows
  Scalar inner = 0.0;
  Scalar outer = 0.0;
  std::string scenario;
  Scalar median_auc = 0.0;
  Scalar median_fi = 0.0;
};

// Evaluates the policy across a Radius grid and InnerOuter (inner, outer)
// pairs, holding everything else in the eval config fixed.
std::vector<SweepRow> sweep_radius(const Policy& policy, std::span<const Trajectory> refs,
                                   const EvalConfig& cfg, std::span<const Scalar> radii,
                                   std::span<const std::pair<Scalar, Scalar>> io_pairs);

}  // namespace idmk
