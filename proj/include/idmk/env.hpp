#pragma once

#include <vector>

#include "idmk/rng.hpp"
#include "idmk/types.hpp"

namespace idmk {

// Planar point-mass dynamics:
//   vel' = clip_norm(damping * vel + gain * stick * boost_factor + noise + region_bias, vmax)
//   pos' = clamp_box(pos + vel', +-arena)
// Button 0 doubles the stick term while held; button 1 is recorded but
// has no physical effect.
struct EnvParams {
  Scalar damping = 0.8;
  Scalar gain = 0.2;
  Scalar vmax = 1.0;    // speed cap, units/step
  Scalar arena = 100.0; // half-width of the square arena
};

// Disc-shaped region that adds a constant velocity bias while the agent
// is inside it.
struct HazardRegion {
  Scalar cx = 0.0;
  Scalar cy = 0.0;
  Scalar radius = 1.0;   // must be > 0
  Scalar bias_x = 0.0;
  Scalar bias_y = 0.0;
};

// Rollout-time perturbations. sigma = 0 and no regions gives the exact
// deterministic dynamics used for reference generation.
struct StochasticitySpec {
  Scalar sigma = 0.0;  // per-axis Gaussian velocity noise, std dev
  std::vector<HazardRegion> regions;
};

struct EnvState {
  Position pos;
  Scalar vel_x = 0.0;
  Scalar vel_y = 0.0;
  Rng rng{0};
};

// Advances one step by value. When sigma = 0 the rng is not consumed, so
// deterministic runs are independent of its state.
EnvState env_step(const EnvState& state, const Action& action, const EnvParams& params,
                  const StochasticitySpec& stoch);

// Layout of the observation's look-ahead block: how many reference points
// it references and the index gap between consecutive entries.
struct ObsSpec {
  int future_entries = 10;
  int stride = 1;
};

// Observation = [pos.x, pos.y, vel.x, vel.y] followed by future_entries
// relative vectors (ref[fut_idx + e*stride] - pos for e = 0, 1, ...),
// indices clamped to the last reference step. Dimension 4 + 2*future_entries.
std::vector<Scalar> observe(const EnvState& state, const Trajectory& ref, int fut_idx,
                            const ObsSpec& spec);

inline int obs_dim(const ObsSpec& spec) { return 4 + 2 * spec.future_entries; }

}  // namespace idmk
