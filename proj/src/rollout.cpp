#include "idmk/rollout.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "idmk/codec.hpp"

namespace idmk {

Action IdmPolicy::act(const Trajectory& agent, const Trajectory& ref, int t,
                      int fut_idx) const {
  const auto input = build_input(agent, ref, t, fut_idx, model_->input);
  return predict_action(*model_, input);
}

Action ReplayPolicy::act(const Trajectory& agent, const Trajectory& ref, int t,
                         int fut_idx) const {
  (void)agent;
  (void)fut_idx;
  const int idx = std::min(t, ref.length() - 1);
  return ref.steps[static_cast<std::size_t>(idx)].action;
}

RolloutResult run_rollout(const Policy& policy, const Trajectory& ref, const RolloutConfig& cfg,
                          std::uint64_t seed) {
  if (ref.length() < 2) {
    throw std::invalid_argument("run_rollout: reference needs at least 2 steps");
  }
  cfg.selector.validate();
  const auto t0 = std::chrono::steady_clock::now();

  const int T = ref.length();
  RolloutResult out;
  out.seed = seed;
  out.agent.meta.scenario = ref.meta.scenario;
  out.agent.meta.seed = seed;
  out.agent.steps.reserve(static_cast<std::size_t>(T));

  EnvState state;
  state.pos = ref.pos_at(0);
  state.rng = Rng(seed);
  RolloutSelector selector(cfg.selector, ref);

  for (int t = 0; t < T; ++t) {
    const int fut = selector.select(t, state.pos);
    TrajectoryStep step;
    step.t = t;
    step.pos = state.pos;
    step.obs = observe(state, ref, fut, cfg.obs);
    step.action = neutral_action({0, 0});
    out.agent.steps.push_back(std::move(step));
    const Action action = policy.act(out.agent, ref, t, fut);
    out.agent.steps.back().action = action;
    state = env_step(state, action, cfg.env, cfg.stoch);
  }

  out.trace = selector.trace();

  const auto agent_pos = positions_of(out.agent);
  const auto ref_pos = positions_of(ref);
  const AucResult auc = cfg.dtw_aligned_auc ? coverage_auc_dtw_aligned(agent_pos, ref_pos)
                                            : coverage_auc(agent_pos, ref_pos);
  out.metrics.auc = auc.auc;
  out.metrics.max_radius = auc.max_radius;
  out.metrics.degenerate = auc.degenerate;
  out.metrics.dtw = dtw_distance(agent_pos, ref_pos);
  const int final_idx =
      run_progress_monitor(agent_pos, ref, cfg.r_fi, std::min(cfg.selector.skip, T - 1));
  out.metrics.fi = future_index_ratio(final_idx, T);

  out.wall_time_s =
      std::chrono::duration<Scalar>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace idmk
