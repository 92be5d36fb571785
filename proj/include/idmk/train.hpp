#pragma once

#include <span>
#include <string>
#include <vector>

#include "idmk/model.hpp"

namespace idmk {

enum class Optimizer { kAdam, kSgd };

struct TrainConfig {
  int epochs = 50;
  int updates_per_epoch = 200;
  int batch_size = 64;
  Scalar learning_rate = 1e-4;
  Optimizer optimizer = Optimizer::kAdam;
  Scalar adam_beta1 = 0.9;
  Scalar adam_beta2 = 0.999;
  Scalar adam_eps = 1e-8;
  std::uint64_t seed = 1;
  int jobs = 1;  // worker threads for per-sample gradients

  void validate() const;
};

// One supervised sample: predict past_src's action at t from the windows
// anchored at (t, fut_idx).
struct BatchSample {
  const Trajectory* past = nullptr;
  const Trajectory* future = nullptr;
  int t = 0;
  int fut_idx = 0;
};

// Mean loss over the batch plus the mean parameter gradient, written to
// grad (size net.param_count()). Per-sample results land in private slots
// and are combined by a fixed-order pairwise reduction, so the output is
// bit-identical no matter how the slots were filled.
//
// The _serial variant is the plain-loop reference; the _parallel variant
// fills slots with an OpenMP worker team. Their results match exactly.
LossBreakdown batch_gradients_serial(const IdmModel& model, std::span<const BatchSample> batch,
                                     std::span<Scalar> grad);
LossBreakdown batch_gradients_parallel(const IdmModel& model, std::span<const BatchSample> batch,
                                       std::span<Scalar> grad, int jobs);

struct TrainResult {
  std::vector<LossBreakdown> epochs;  // per-epoch means over all updates
};

// In-place minibatch training over uniformly sampled (trajectory, t)
// pairs with the static training alignment fut_idx = min(t + skip, T-1).
// Deterministic given the config seed, for any jobs value.
// Throws if the dataset is empty, shapes disagree with the model, or any
// trajectory is shorter than the window needs.
TrainResult train(IdmModel& model, const std::vector<Trajectory>& dataset,
                  const TrainConfig& cfg);

struct GradCheckReport {
  Scalar max_rel_err = 0.0;
  int probes = 0;
  bool pass = false;
};

// Central-difference check of backward on a fixed batch: perturbs
// n_probes randomly chosen parameters by +-h and compares the analytic
// gradient against the finite difference. Relative error uses a 1e-4
// floor so finite-difference noise on near-zero gradients cannot fail
// the check. Throws if h <= 0 or the batch is empty.
GradCheckReport grad_check(const IdmModel& model, std::span<const BatchSample> batch,
                           int n_probes, Scalar h, Scalar tol, std::uint64_t seed);

}  // namespace idmk
