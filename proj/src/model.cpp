#include "idmk/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "idmk/codec.hpp"

namespace idmk {

void WindowSpec::validate() const {
  if (past < 1) {
    throw std::invalid_argument("window: past must be >= 1");
  }
  if (future < 0) {
    throw std::invalid_argument("window: future must be >= 0");
  }
  if (skip < 0) {
    throw std::invalid_argument("window: skip must be >= 0");
  }
}

namespace {

void append_step(std::vector<Scalar>& out, const Trajectory& src, int step_idx,
                 const InputSpec& spec) {
  const int width = spec.step_width();
  if (step_idx < 0) {
    out.insert(out.end(), static_cast<std::size_t>(width), 0.0);
    return;
  }
  const auto& step = src.steps[static_cast<std::size_t>(step_idx)];
  if (static_cast<int>(step.obs.size()) != spec.obs_dim) {
    throw std::invalid_argument("build_input: trajectory obs dimension does not match spec");
  }
  if (spec.mask.use_obs) {
    out.insert(out.end(), step.obs.begin(), step.obs.end());
  } else {
    out.insert(out.end(), static_cast<std::size_t>(spec.obs_dim), 0.0);
  }
  const int action_width = spec.space.buttons + spec.space.sticks;
  if (spec.mask.use_actions && step_idx >= 1) {
    const auto& prev = src.steps[static_cast<std::size_t>(step_idx - 1)].action;
    if (static_cast<int>(prev.buttons.size()) != spec.space.buttons ||
        static_cast<int>(prev.sticks.size()) != spec.space.sticks) {
      throw std::invalid_argument("build_input: action shape does not match spec");
    }
    const auto enc = encode_action(prev);
    out.insert(out.end(), enc.begin(), enc.end());
  } else {
    out.insert(out.end(), static_cast<std::size_t>(action_width), 0.0);
  }
}

}  // namespace

std::vector<Scalar> build_input(const Trajectory& past_src, const Trajectory& future_src, int t,
                                int fut_idx, const InputSpec& spec) {
  spec.window.validate();
  if (past_src.steps.empty() || future_src.steps.empty()) {
    throw std::invalid_argument("build_input: empty trajectory");
  }
  if (t < 0 || t >= past_src.length()) {
    throw std::invalid_argument("build_input: t outside past trajectory");
  }
  if (fut_idx < 0 || fut_idx >= future_src.length()) {
    throw std::invalid_argument("build_input: fut_idx outside future trajectory");
  }
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(spec.input_width()));
  for (int s = t - spec.window.past + 1; s <= t; ++s) {
    append_step(out, past_src, s, spec);
  }
  const int last = future_src.length() - 1;
  for (int k = 0; k < spec.window.future; ++k) {
    append_step(out, future_src, std::min(fut_idx + k, last), spec);
  }
  return out;
}

IdmModel make_idm_model(const InputSpec& input, const ModelShape& shape, std::uint64_t seed) {
  input.window.validate();
  if (input.space.buttons < 0 || input.space.sticks < 0 ||
      input.space.buttons + input.space.sticks == 0) {
    throw std::invalid_argument("make_idm_model: action space must have at least one head");
  }
  if (input.obs_dim < 0 || input.stride < 1) {
    throw std::invalid_argument("make_idm_model: bad obs layout");
  }
  if (shape.encoder_layers < 1 || shape.head_layers < 1 || shape.hidden < 1) {
    throw std::invalid_argument("make_idm_model: bad shape");
  }
  IdmModel m;
  m.input = input;
  m.shape = shape;
  const int depth = shape.encoder_layers + shape.head_layers;
  m.net = make_mlp(input.input_width(), shape.hidden,
                   2 * input.space.buttons + 11 * input.space.sticks, depth, seed);
  return m;
}

namespace {

// Stable segment cross-entropy; returns the loss and writes
// softmax - onehot into dlogits when requested.
Scalar segment_ce(std::span<const Scalar> logits, int target, std::span<Scalar> dlogits) {
  Scalar m = logits[0];
  for (const Scalar v : logits) {
    m = std::max(m, v);
  }
  Scalar denom = 0.0;
  for (const Scalar v : logits) {
    denom += std::exp(v - m);
  }
  const Scalar lse = m + std::log(denom);
  if (!dlogits.empty()) {
    for (std::size_t i = 0; i < logits.size(); ++i) {
      dlogits[i] = std::exp(logits[i] - m) / denom;
    }
    dlogits[static_cast<std::size_t>(target)] -= 1.0;
  }
  return lse - logits[static_cast<std::size_t>(target)];
}

int segment_argmax(std::span<const Scalar> logits) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(logits.size()); ++i) {
    if (logits[static_cast<std::size_t>(i)] > logits[static_cast<std::size_t>(best)]) {
      best = i;
    }
  }
  return best;
}

}  // namespace

LossBreakdown action_loss(std::span<const Scalar> logits, const Action& target,
                          const ActionSpace& space, std::span<Scalar> dlogits) {
  const std::size_t want = static_cast<std::size_t>(2 * space.buttons + 11 * space.sticks);
  if (logits.size() != want) {
    throw std::invalid_argument("action_loss: logits width mismatch");
  }
  if (!dlogits.empty() && dlogits.size() != want) {
    throw std::invalid_argument("action_loss: dlogits width mismatch");
  }
  if (static_cast<int>(target.buttons.size()) != space.buttons ||
      static_cast<int>(target.sticks.size()) != space.sticks) {
    throw std::invalid_argument("action_loss: target does not match space");
  }

  LossBreakdown out;
  std::size_t off = 0;
  // Per-modality means keep the two loss terms comparable regardless of
  // head counts; gradients carry the same 1/count factors.
  const Scalar bn = space.buttons > 0 ? static_cast<Scalar>(space.buttons) : 1.0;
  const Scalar sn = space.sticks > 0 ? static_cast<Scalar>(space.sticks) : 1.0;
  for (int bi = 0; bi < space.buttons; ++bi) {
    auto seg = logits.subspan(off, 2);
    auto dseg = dlogits.empty() ? std::span<Scalar>() : dlogits.subspan(off, 2);
    const int tgt = target.buttons[static_cast<std::size_t>(bi)] ? 1 : 0;
    out.button_loss += segment_ce(seg, tgt, dseg) / bn;
    if (!dseg.empty()) {
      for (auto& v : dseg) {
        v /= bn;
      }
    }
    if (segment_argmax(seg) != tgt) {
      out.button_error += 1.0 / bn;
    }
    off += 2;
  }
  for (int si = 0; si < space.sticks; ++si) {
    auto seg = logits.subspan(off, 11);
    auto dseg = dlogits.empty() ? std::span<Scalar>() : dlogits.subspan(off, 11);
    const int tgt = target.sticks[static_cast<std::size_t>(si)];
    if (tgt < 0 || tgt >= kStickBins) {
      throw std::invalid_argument("action_loss: target stick bin out of range");
    }
    out.sticks_loss += segment_ce(seg, tgt, dseg) / sn;
    if (!dseg.empty()) {
      for (auto& v : dseg) {
        v /= sn;
      }
    }
    if (segment_argmax(seg) != tgt) {
      out.sticks_error += 1.0 / sn;
    }
    off += 11;
  }
  out.total = out.button_loss + out.sticks_loss;
  return out;
}

Action decode_logits(std::span<const Scalar> logits, const ActionSpace& space) {
  const std::size_t want = static_cast<std::size_t>(2 * space.buttons + 11 * space.sticks);
  if (logits.size() != want) {
    throw std::invalid_argument("decode_logits: logits width mismatch");
  }
  Action a;
  std::size_t off = 0;
  for (int bi = 0; bi < space.buttons; ++bi) {
    a.buttons.push_back(segment_argmax(logits.subspan(off, 2)) == 1 ? 1 : 0);
    off += 2;
  }
  for (int si = 0; si < space.sticks; ++si) {
    a.sticks.push_back(segment_argmax(logits.subspan(off, 11)));
    off += 11;
  }
  return a;
}

Action predict_action(const IdmModel& model, std::span<const Scalar> input) {
  const auto logits = forward(model.net, input, nullptr);
  return decode_logits(logits, model.input.space);
}

}  // namespace idmk
