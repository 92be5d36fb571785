#include "idmk/env.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "idmk/codec.hpp"

namespace idmk {

EnvState env_step(const EnvState& state, const Action& action, const EnvParams& params,
                  const StochasticitySpec& stoch) {
  for (const auto& r : stoch.regions) {
    if (!(r.radius > 0.0)) {
      throw std::invalid_argument("env_step: hazard region radius must be > 0");
    }
  }

  const Scalar stick_x = action.sticks.empty() ? 0.0 : dequantize_stick(action.sticks[0]);
  const Scalar stick_y = action.sticks.size() < 2 ? 0.0 : dequantize_stick(action.sticks[1]);
  const Scalar boost = (!action.buttons.empty() && action.buttons[0]) ? 2.0 : 1.0;

  EnvState next = state;
  Scalar vx = params.damping * state.vel_x + params.gain * stick_x * boost;
  Scalar vy = params.damping * state.vel_y + params.gain * stick_y * boost;

  if (stoch.sigma > 0.0) {
    vx += stoch.sigma * gaussian(next.rng);
    vy += stoch.sigma * gaussian(next.rng);
  }
  for (const auto& r : stoch.regions) {
    const Scalar dx = state.pos.x - r.cx;
    const Scalar dy = state.pos.y - r.cy;
    if (dx * dx + dy * dy <= r.radius * r.radius) {
      vx += r.bias_x;
      vy += r.bias_y;
    }
  }

  const Scalar speed = std::sqrt(vx * vx + vy * vy);
  if (speed > params.vmax) {
    const Scalar scale = params.vmax / speed;
    vx *= scale;
    vy *= scale;
  }

  next.vel_x = vx;
  next.vel_y = vy;
  next.pos.x = std::clamp(state.pos.x + vx, -params.arena, params.arena);
  next.pos.y = std::clamp(state.pos.y + vy, -params.arena, params.arena);
  next.pos.z = 0.0;
  return next;
}

std::vector<Scalar> observe(const EnvState& state, const Trajectory& ref, int fut_idx,
                            const ObsSpec& spec) {
  if (ref.steps.empty()) {
    throw std::invalid_argument("observe: empty reference");
  }
  if (fut_idx < 0 || fut_idx >= ref.length()) {
    throw std::invalid_argument("observe: fut_idx " + std::to_string(fut_idx) +
                                " outside [0, " + std::to_string(ref.length() - 1) + "]");
  }
  if (spec.future_entries < 0 || spec.stride < 1) {
    throw std::invalid_argument("observe: future_entries must be >= 0 and stride >= 1");
  }
  const int last = ref.length() - 1;
  std::vector<Scalar> obs;
  obs.reserve(static_cast<std::size_t>(obs_dim(spec)));
  obs.push_back(state.pos.x);
  obs.push_back(state.pos.y);
  obs.push_back(state.vel_x);
  obs.push_back(state.vel_y);
  for (int e = 0; e < spec.future_entries; ++e) {
    const int idx = std::min(fut_idx + e * spec.stride, last);
    const Position& target = ref.pos_at(idx);
    obs.push_back(target.x - state.pos.x);
    obs.push_back(target.y - state.pos.y);
  }
  return obs;
}

}  // namespace idmk
