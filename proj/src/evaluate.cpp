#include "idmk/evaluate.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace idmk {

std::vector<RolloutResult> run_rollout_batch_serial(const Policy& policy,
                                                    std::span<const RolloutJob> jobs,
                                                    const RolloutConfig& cfg) {
  std::vector<RolloutResult> out(jobs.size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    out[i] = run_rollout(policy, *jobs[i].ref, cfg, jobs[i].seed);
  }
  return out;
}

std::vector<RolloutResult> run_rollout_batch_parallel(const Policy& policy,
                                                      std::span<const RolloutJob> jobs,
                                                      const RolloutConfig& cfg, int n_workers) {
  if (n_workers < 1) {
    throw std::invalid_argument("run_rollout_batch_parallel: workers must be >= 1");
  }
  std::vector<RolloutResult> out(jobs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(n_workers)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(jobs.size()); ++i) {
    out[static_cast<std::size_t>(i)] =
        run_rollout(policy, *jobs[static_cast<std::size_t>(i)].ref, cfg,
                    jobs[static_cast<std::size_t>(i)].seed);
  }
  return out;
}

EvalTable evaluate(const Policy& policy, std::span<const Trajectory> refs, const EvalConfig& cfg) {
  if (refs.empty()) {
    throw std::invalid_argument("evaluate: no references");
  }
  if (cfg.n_seeds < 1) {
    throw std::invalid_argument("evaluate: n_seeds must be >= 1");
  }
  std::vector<RolloutJob> jobs;
  jobs.reserve(refs.size() * static_cast<std::size_t>(cfg.n_seeds));
  for (const auto& ref : refs) {
    for (int i = 0; i < cfg.n_seeds; ++i) {
      jobs.push_back({&ref, cfg.base_seed + static_cast<std::uint64_t>(i)});
    }
  }
  const auto results = run_rollout_batch_parallel(policy, jobs, cfg.rollout, cfg.jobs);

  EvalTable table;
  const std::string strategy = strategy_name(cfg.rollout.selector.strategy);
  table.rows.reserve(results.size());
  std::size_t k = 0;
  for (const auto& ref : refs) {
    std::vector<Scalar> aucs, fis, dtws;
    for (int i = 0; i < cfg.n_seeds; ++i, ++k) {
      const auto& r = results[k];
      table.rows.push_back({ref.meta.scenario, r.seed, strategy, r.metrics});
      aucs.push_back(r.metrics.auc);
      fis.push_back(r.metrics.fi);
      dtws.push_back(r.metrics.dtw);
    }
    table.medians.push_back(
        {ref.meta.scenario, strategy, median(aucs), median(fis), median(dtws)});
  }
  return table;
}

GenConfig DatasetSpec::gen_config(const WindowSpec& window) const {
  GenConfig gen;
  gen.space = space;
  gen.obs = {window.future, stride};
  gen.skip = window.skip;
  gen.env = env;
  gen.jitter = jitter;
  return gen;
}

std::vector<AblationConfig> standard_ablations(int skip) {
  const FeatureMask full{true, true};
  std::vector<AblationConfig> out;
  out.push_back({"bc-10p-0f", {10, 0, skip}, full});
  out.push_back({"1p-1f", {1, 1, skip}, full});
  out.push_back({"10p-1f", {10, 1, skip}, full});
  out.push_back({"1p-10f", {1, 10, skip}, full});
  out.push_back({"10p-10f", {10, 10, skip}, full});
  out.push_back({"obs-only-10p-10f", {10, 10, skip}, {true, false}});
  out.push_back({"actions-only-10p-10f", {10, 10, skip}, {false, true}});
  return out;
}

std::vector<AblationResult> ablate_windows(const DatasetSpec& data,
                                           std::span<const AblationConfig> configs,
                                           const ModelShape& shape, const TrainConfig& train_cfg,
                                           const EvalConfig& eval_cfg,
                                           std::span<const ScenarioId> eval_scenarios) {
  if (configs.empty()) {
    throw std::invalid_argument("ablate_windows: no configurations");
  }
  if (eval_scenarios.empty()) {
    throw std::invalid_argument("ablate_windows: no evaluation scenarios");
  }
  int longest = 0;
  for (const auto& c : configs) {
    longest = std::max({longest, c.window.past, c.window.future});
  }
  for (const auto id : data.scenarios) {
    if (scenario_length(id) < longest) {
      throw std::invalid_argument("ablate_windows: dataset too short for the largest window");
    }
  }

  std::vector<AblationResult> out;
  out.reserve(configs.size());
  for (const auto& config : configs) {
    const GenConfig gen = data.gen_config(config.window);
    const auto dataset = generate_dataset(data.scenarios, data.n_per, data.seed, gen);

    InputSpec input;
    input.window = config.window;
    input.space = data.space;
    input.mask = config.mask;
    input.obs_dim = obs_dim(gen.obs);
    input.stride = data.stride;

    IdmModel model = make_idm_model(input, shape, train_cfg.seed);
    const TrainResult trained = train(model, dataset, train_cfg);

    std::vector<Trajectory> refs;
    refs.reserve(eval_scenarios.size());
    for (const auto id : eval_scenarios) {
      refs.push_back(make_reference(id, 0, gen));
    }

    EvalConfig run_cfg = eval_cfg;
    run_cfg.rollout.obs = gen.obs;
    const IdmPolicy policy(model);
    AblationResult res;
    res.config = config;
    res.final_epoch = trained.epochs.back();
    res.eval = evaluate(policy, refs, run_cfg);
    out.push_back(std::move(res));
  }
  return out;
}

std::vector<SweepRow> sweep_radius(const Policy& policy, std::span<const Trajectory> refs,
                                   const EvalConfig& cfg, std::span<const Scalar> radii,
                                   std::span<const std::pair<Scalar, Scalar>> io_pairs) {
  if (radii.empty() && io_pairs.empty()) {
    throw std::invalid_argument("sweep_radius: nothing to sweep");
  }
  std::vector<SweepRow> out;
  for (const Scalar r : radii) {
    EvalConfig run_cfg = cfg;
    run_cfg.rollout.selector.strategy = Strategy::kRadius;
    run_cfg.rollout.selector.radius = r;
    const auto table = evaluate(policy, refs, run_cfg);
    for (const auto& m : table.medians) {
      out.push_back({"radius", r, 0.0, 0.0, m.scenario, m.median_auc, m.median_fi});
    }
  }
  for (const auto& [inner, outer] : io_pairs) {
    EvalConfig run_cfg = cfg;
    run_cfg.rollout.selector.strategy = Strategy::kInnerOuter;
    run_cfg.rollout.selector.inner = inner;
    run_cfg.rollout.selector.outer = outer;
    const auto table = evaluate(policy, refs, run_cfg);
    for (const auto& m : table.medians) {
      out.push_back({"inner_outer", 0.0, inner, outer, m.scenario, m.median_auc, m.median_fi});
    }
  }
  return out;
}

}  // namespace idmk
