#include <chrono>
#include <iostream>
#include <vector>

#include "idmk/config.hpp"
#include "idmk/train.hpp"

using namespace idmk;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<BatchSample> make_batch(const std::vector<Trajectory>& data, const WindowSpec& window,
                                    int n, std::uint64_t seed) {
  std::vector<BatchSample> batch;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const auto& tr = data[uniform_index(rng, data.size())];
    const int t = static_cast<int>(uniform_index(rng, tr.length()));
    batch.push_back({&tr, &tr, t, static_select(t, window.skip, tr.length())});
  }
  return batch;
}

}  // namespace

int main(int argc, char** argv) {
  int jobs = 4;
  int reps = 20;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--jobs" && i + 1 < argc) {
      jobs = std::stoi(argv[++i]);
    } else if (arg == "--reps" && i + 1 < argc) {
      reps = std::stoi(argv[++i]);
    } else {
      std::cerr << "usage: idmk_bench [--jobs N] [--reps N]\n";
      return 1;
    }
  }

  RunConfig cfg;
  const auto dataset =
      generate_dataset(cfg.scenarios, cfg.n_per, cfg.data_seed, cfg.gen_config());
  IdmModel model = make_idm_model(cfg.input_spec(), ModelShape{}, 1);
  const auto batch = make_batch(dataset, cfg.window, 256, 42);

  std::vector<Scalar> grad_a(model.net.param_count());
  std::vector<Scalar> grad_b(model.net.param_count());
  std::cout << "batch gradients, " << batch.size() << " samples x " << reps << " reps\n";

  auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    batch_gradients_serial(model, batch, grad_a);
  }
  const double serial_s = seconds_since(start);
  std::cout << "  serial:           " << serial_s << " s\n";

  start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) {
    batch_gradients_parallel(model, batch, grad_b, jobs);
  }
  const double parallel_s = seconds_since(start);
  std::cout << "  parallel(" << jobs << "):      " << parallel_s << " s  ("
            << (parallel_s > 0 ? serial_s / parallel_s : 0.0) << "x)\n";
  std::cout << "  gradients match:  " << (grad_a == grad_b ? "yes (bitwise)" : "NO") << "\n\n";

  std::vector<Trajectory> refs;
  for (ScenarioId id : cfg.scenarios) {
    refs.push_back(make_reference(id, cfg.data_seed, cfg.gen_config()));
  }
  std::vector<RolloutJob> rollout_jobs;
  for (const auto& ref : refs) {
    for (std::uint64_t s = 0; s < 10; ++s) {
      rollout_jobs.push_back({&ref, 1000 + s});
    }
  }
  const ReplayPolicy policy;
  RolloutConfig rc = cfg.rollout_config();
  std::cout << "rollout batch, " << rollout_jobs.size() << " rollouts\n";

  start = std::chrono::steady_clock::now();
  const auto res_a = run_rollout_batch_serial(policy, rollout_jobs, rc);
  const double roll_serial_s = seconds_since(start);
  std::cout << "  serial:           " << roll_serial_s << " s\n";

  start = std::chrono::steady_clock::now();
  const auto res_b = run_rollout_batch_parallel(policy, rollout_jobs, rc, jobs);
  const double roll_parallel_s = seconds_since(start);
  std::cout << "  parallel(" << jobs << "):      " << roll_parallel_s << " s  ("
            << (roll_parallel_s > 0 ? roll_serial_s / roll_parallel_s : 0.0) << "x)\n";

  bool match = res_a.size() == res_b.size();
  for (std::size_t i = 0; match && i < res_a.size(); ++i) {
    match = res_a[i].metrics.auc == res_b[i].metrics.auc &&
            res_a[i].metrics.dtw == res_b[i].metrics.dtw &&
            res_a[i].agent.steps.size() == res_b[i].agent.steps.size();
  }
  std::cout << "  results match:    " << (match ? "yes (bitwise)" : "NO") << '\n';
  return (grad_a == grad_b && match) ? 0 : 1;
}
