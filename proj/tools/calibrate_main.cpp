#include <algorithm>
#include <iomanip>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "idmk/config.hpp"

using namespace idmk;

namespace {

// Oracle runs behind the frozen test thresholds: replay degradation under
// noise, and the window/modality ablation table. Numbers printed here are
// copied into docs/calibration.md when thresholds are pinned.

int cmd_replay(int seeds, Scalar sigma) {
  RunConfig cfg;
  const auto ref = make_reference(ScenarioId::kWinding0, cfg.data_seed, cfg.gen_config());
  RolloutConfig rc = cfg.rollout_config();
  rc.stoch.sigma = sigma;
  const ReplayPolicy policy;

  std::vector<Scalar> end_dist;
  std::vector<Scalar> aucs;
  int auc_below_one = 0;
  int end_past_one = 0;
  for (int i = 0; i < seeds; ++i) {
    const auto rr = run_rollout(policy, ref, rc, cfg.base_seed + i);
    const Scalar d = distance(rr.agent.steps.back().pos, ref.steps.back().pos);
    end_dist.push_back(d);
    aucs.push_back(rr.metrics.auc);
    if (d >= 1.0) {
      ++end_past_one;
    }
    if (rr.metrics.auc < 1.0) {
      ++auc_below_one;
    }
  }
  std::sort(end_dist.begin(), end_dist.end());
  std::sort(aucs.begin(), aucs.end());
  const auto q = [](const std::vector<Scalar>& v, double p) {
    return v[static_cast<std::size_t>(p * (v.size() - 1))];
  };
  std::cout << "replay on winding-0, sigma=" << sigma << ", " << seeds << " seeds (base "
            << cfg.base_seed << ")\n";
  std::cout << "  endpoint distance  min=" << q(end_dist, 0.0) << " p10=" << q(end_dist, 0.10)
            << " p25=" << q(end_dist, 0.25) << " median=" << q(end_dist, 0.5)
            << " p90=" << q(end_dist, 0.90) << " max=" << q(end_dist, 1.0) << '\n';
  std::cout << "  endpoint >= 1.0 in " << end_past_one << "/" << seeds << '\n';
  std::cout << "  auc  min=" << q(aucs, 0.0) << " median=" << q(aucs, 0.5)
            << " max=" << q(aucs, 1.0) << "; auc < 1.0 in " << auc_below_one << "/" << seeds
            << '\n';
  return 0;
}

int cmd_ablations(Scalar sigma, int epochs, int updates, Scalar lr,
                  const std::string& scenario_csv) {
  RunConfig cfg;
  cfg.sigma = sigma;
  if (epochs > 0) {
    cfg.train.epochs = epochs;
  }
  if (updates > 0) {
    cfg.train.updates_per_epoch = updates;
  }
  if (lr > 0) {
    cfg.train.learning_rate = lr;
  }
  const auto eval_scenarios = parse_scenario_list(scenario_csv);
  const auto configs = standard_ablations(cfg.selector.skip);
  const auto results = ablate_windows(cfg.dataset_spec(), configs, ModelShape{}, cfg.train,
                                      cfg.eval_config(1), eval_scenarios);

  std::cout << "ablations: sigma=" << sigma << " epochs=" << cfg.train.epochs
            << " updates=" << cfg.train.updates_per_epoch << " lr=" << cfg.train.learning_rate << " batch=" << cfg.train.batch_size
            << " strategy=" << strategy_name(cfg.selector.strategy)
            << " r=" << cfg.selector.radius << " K=" << cfg.selector.skip << '\n';
  for (const auto& res : results) {
    Scalar sum = 0.0;
    std::cout << "  " << std::left << std::setw(26) << res.config.label
              << " final_total=" << std::setw(10) << std::setprecision(4) << res.final_epoch.total
              << " sticks_err=" << std::setw(8) << res.final_epoch.sticks_error << " | ";
    for (const auto& row : res.eval.medians) {
      std::cout << row.scenario << "=" << std::setprecision(4) << row.median_auc << " ";
      sum += row.median_auc;
    }
    std::cout << "| mean_auc=" << std::setprecision(4)
              << (res.eval.medians.empty() ? 0.0 : sum / res.eval.medians.size()) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::string mode = argc > 1 ? argv[1] : "";
  int seeds = 100;
  Scalar sigma = 0.05;
  int epochs = 0;
  int updates = 0;
  Scalar lr = 0.0;
  std::string scenarios = "all";
  for (int i = 2; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seeds" && i + 1 < argc) {
      seeds = std::stoi(argv[++i]);
    } else if (arg == "--sigma" && i + 1 < argc) {
      sigma = std::stod(argv[++i]);
    } else if (arg == "--epochs" && i + 1 < argc) {
      epochs = std::stoi(argv[++i]);
    } else if (arg == "--updates" && i + 1 < argc) {
      updates = std::stoi(argv[++i]);
    } else if (arg == "--lr" && i + 1 < argc) {
      lr = std::stod(argv[++i]);
    } else if (arg == "--scenarios" && i + 1 < argc) {
      scenarios = argv[++i];
    } else {
      mode = "";
      break;
    }
  }
  try {
    if (mode == "replay") {
      return cmd_replay(seeds, sigma);
    }
    if (mode == "ablations") {
      return cmd_ablations(sigma, epochs, updates, lr, scenarios);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  std::cerr << "usage: idmk_calibrate replay [--seeds N] [--sigma S]\n"
            << "       idmk_calibrate ablations [--sigma S] [--epochs E] [--updates U] [--lr R] "
               "[--scenarios csv]\n";
  return 1;
}
