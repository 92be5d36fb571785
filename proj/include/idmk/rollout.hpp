#pragma once

#include <memory>

#include "idmk/env.hpp"
#include "idmk/metrics.hpp"
#include "idmk/model.hpp"
#include "idmk/selector.hpp"
#include "idmk/types.hpp"

namespace idmk {

// Controller driven by the rollout loop. Implementations must be
// re-entrant: act() is called concurrently from different rollouts.
class Policy {
 public:
  virtual ~Policy() = default;

  // agent holds the rollout so far; step t has its position and
  // observation filled in, and actions exist for steps < t. fut_idx is
  // the conditioning index the selector chose for this step.
  virtual Action act(const Trajectory& agent, const Trajectory& ref, int t,
                     int fut_idx) const = 0;
};

// Feeds the model its own past window and the reference future window.
class IdmPolicy : public Policy {
 public:
  explicit IdmPolicy(const IdmModel& model) : model_(&model) {}
  Action act(const Trajectory& agent, const Trajectory& ref, int t, int fut_idx) const override;

 private:
  const IdmModel* model_;
};

// Replays the reference action for the same timestep; the oracle agent
// for deterministic-environment checks.
class ReplayPolicy : public Policy {
 public:
  Action act(const Trajectory& agent, const Trajectory& ref, int t, int fut_idx) const override;
};

struct MetricReport {
  Scalar auc = 0.0;
  Scalar fi = 0.0;
  Scalar dtw = 0.0;
  Scalar max_radius = 0.0;
  bool degenerate = false;
};

struct RolloutConfig {
  SelectorParams selector;
  StochasticitySpec stoch;
  EnvParams env;
  ObsSpec obs;                  // how step observations are assembled
  Scalar r_fi = 2.0;            // progress-monitor radius
  bool dtw_aligned_auc = false; // score with DTW-aligned distances instead
};

struct RolloutResult {
  Trajectory agent;
  SelectorTrace trace;
  MetricReport metrics;
  std::uint64_t seed = 0;
  Scalar wall_time_s = 0.0;  // diagnostic only, never persisted
};

// Runs the policy against the reference for exactly ref.length() steps,
// starting from the reference start position at rest. Per step: the
// selector picks the conditioning index from the agent's current
// position, the observation is assembled, the policy acts, the
// environment advances with the seeded stochasticity. The progress
// monitor runs alongside regardless of strategy.
RolloutResult run_rollout(const Policy& policy, const Trajectory& ref, const RolloutConfig& cfg,
                          std::uint64_t seed);

}  // namespace idmk
