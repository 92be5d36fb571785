#pragma once

#include <span>
#include <vector>

#include "idmk/env.hpp"
#include "idmk/net.hpp"
#include "idmk/types.hpp"

namespace idmk {

// Window geometry: past steps consumed, future steps consumed, and the
// look-ahead offset K used to place the future window during training.
struct WindowSpec {
  int past = 10;
  int future = 10;
  int skip = 10;

  // Throws std::invalid_argument unless past >= 1, future >= 0, skip >= 0.
  void validate() const;
};

// Feature ablation switches: zero out observation or action features in
// the assembled input while keeping its width fixed.
struct FeatureMask {
  bool use_obs = true;
  bool use_actions = true;
};

// Everything needed to assemble one model input from trajectories.
// obs_dim is the observation dimension of the consumed trajectories
// (4 + 2*window.future when the data was generated for this window);
// stride is the index gap of the observation's look-ahead block.
struct InputSpec {
  WindowSpec window;
  ActionSpace space;
  FeatureMask mask;
  int obs_dim = 24;
  int stride = 1;

  int step_width() const { return obs_dim + space.buttons + space.sticks; }
  int input_width() const { return (window.past + window.future) * step_width(); }
  ObsSpec obs_spec() const { return {window.future, stride}; }
};

// Flat model input: past block then future block, one step_width() slice
// per step. Past slices come from past_src at steps t-P+1 .. t (zero
// padding before step 0); future slices from future_src at fut_idx ..
// fut_idx+F-1 (clamped to the last step, i.e. repeat padding). Each slice
// is the step's observation followed by the encoded action of the
// preceding step, so the past block ends with the action at t-1 and the
// prediction target stays out of it.
std::vector<Scalar> build_input(const Trajectory& past_src, const Trajectory& future_src, int t,
                                int fut_idx, const InputSpec& spec);

// Network size knobs: encoder_layers + head_layers dense layers total.
struct ModelShape {
  int encoder_layers = 2;
  int head_layers = 2;
  int hidden = 64;
};

// Inverse-dynamics model: assembled input -> per-head logits, laid out as
// 2 logits per button then 11 per stick axis.
struct IdmModel {
  InputSpec input;
  ModelShape shape;
  MlpNet net;

  int output_width() const { return 2 * input.space.buttons + 11 * input.space.sticks; }
};

IdmModel make_idm_model(const InputSpec& input, const ModelShape& shape, std::uint64_t seed);

// Loss over one sample, averaged per modality: button_loss is the mean
// 2-way cross-entropy over buttons, sticks_loss the mean 11-way
// cross-entropy over stick axes, total their sum. The *_error fields are
// the fraction of heads whose argmax misses the target.
struct LossBreakdown {
  Scalar total = 0.0;
  Scalar button_loss = 0.0;
  Scalar sticks_loss = 0.0;
  Scalar button_error = 0.0;
  Scalar sticks_error = 0.0;
};

// Computes the breakdown and, when dlogits is non-empty, writes the loss
// gradient at the logits into it (size output_width).
LossBreakdown action_loss(std::span<const Scalar> logits, const Action& target,
                          const ActionSpace& space, std::span<Scalar> dlogits);

// Greedy head decode: per-head argmax, ties resolved to the first index
// (button off / lower bin).
Action decode_logits(std::span<const Scalar> logits, const ActionSpace& space);

Action predict_action(const IdmModel& model, std::span<const Scalar> input);

}  // namespace idmk
