#include "idmk/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "idmk/checkpoint.hpp"
#include "idmk/config.hpp"
#include "idmk/jsonl.hpp"
#include "idmk/manifest.hpp"
#include "idmk/metrics.hpp"
#include "idmk/rollout.hpp"
#include "idmk/train.hpp"

namespace idmk {

namespace fs = std::filesystem;

namespace {

RunConfig load_effective_config(const std::string& path) {
  RunConfig cfg = path.empty() ? RunConfig{} : load_config_file(path);
  cfg.validate();
  return cfg;
}

std::vector<std::string> manifest_listing(const fs::path& dir) {
  const fs::path mpath = dir / "manifest.json";
  std::ifstream in(mpath);
  if (!in) {
    throw std::runtime_error("missing manifest: " + mpath.string());
  }
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded() || !j.contains("files") || !j["files"].is_array()) {
    throw std::runtime_error("corrupt manifest: " + mpath.string());
  }
  auto files = j["files"].get<std::vector<std::string>>();
  std::sort(files.begin(), files.end());
  return files;
}

std::vector<Trajectory> load_prefixed(const fs::path& dir, const std::string& prefix) {
  std::vector<Trajectory> out;
  for (const auto& f : manifest_listing(dir)) {
    if (f.rfind(prefix, 0) == 0) {
      out.push_back(read_trajectory_file(dir / f));
    }
  }
  if (out.empty()) {
    throw std::runtime_error("manifest in " + dir.string() + " lists no " + prefix +
                             "* trajectories");
  }
  return out;
}

void check_obs_dim(const std::vector<Trajectory>& data, int want, const std::string& role) {
  for (const auto& tr : data) {
    const int have = static_cast<int>(tr.steps.at(0).obs.size());
    if (have != want) {
      throw std::runtime_error(
          role + " " + tr.meta.scenario + " has observation dim " + std::to_string(have) +
          " but the model expects " + std::to_string(want) +
          " (observations carry one relative vector per future-window step; regenerate the "
          "data with a matching future window)");
    }
  }
}

std::string run_tag(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%03d", i);
  return buf;
}

std::vector<Scalar> parse_scalar_list(const std::string& csv, const std::string& flag) {
  std::vector<Scalar> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument("");
      }
    } catch (const std::exception&) {
      throw std::invalid_argument(flag + ": not a number: \"" + item + "\"");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument(flag + ": empty list");
  }
  return out;
}

std::vector<std::pair<Scalar, Scalar>> parse_pair_list(const std::string& csv,
                                                       const std::string& flag) {
  std::vector<std::pair<Scalar, Scalar>> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument(flag + ": expected inner:outer, got \"" + item + "\"");
    }
    const auto pair_part = [&](const std::string& s) {
      try {
        std::size_t used = 0;
        const Scalar v = std::stod(s, &used);
        if (used != s.size()) {
          throw std::invalid_argument("");
        }
        return v;
      } catch (const std::exception&) {
        throw std::invalid_argument(flag + ": not a number: \"" + s + "\"");
      }
    };
    out.push_back({pair_part(item.substr(0, colon)), pair_part(item.substr(colon + 1))});
  }
  return out;
}

void print_loss_line(std::ostream& out, const std::string& head, const LossBreakdown& l) {
  out << head << " total=" << scalar_str(l.total) << " button_loss=" << scalar_str(l.button_loss)
      << " sticks_loss=" << scalar_str(l.sticks_loss)
      << " button_err=" << scalar_str(l.button_error)
      << " sticks_err=" << scalar_str(l.sticks_error) << '\n';
}

void print_median_table(std::ostream& out, std::span<const MedianRow> medians) {
  out << std::left << std::setw(18) << "trajectory" << std::setw(13) << "strategy"
      << std::setw(22) << "auc" << std::setw(22) << "fi" << "dtw" << '\n';
  for (const auto& row : medians) {
    out << std::left << std::setw(18) << row.scenario << std::setw(13) << row.strategy
        << std::setw(22) << scalar_str(row.median_auc) << std::setw(22)
        << scalar_str(row.median_fi) << scalar_str(row.median_dtw) << '\n';
  }
}

// The head of a fresh net is all-zero, which also zeroes every upstream
// gradient; jittering the parameters puts all layers in play for the
// finite-difference probes.
IdmModel jittered_copy(const IdmModel& model, std::uint64_t seed) {
  IdmModel probe = model;
  auto params = flatten_params(probe.net);
  Rng rng(derive_seed(seed, 0xC0FFEE));
  for (auto& p : params) {
    p += uniform_in(rng, -0.1, 0.1);
  }
  unflatten_params(probe.net, params);
  return probe;
}

GradCheckReport run_grad_check(const RunConfig& cfg, const std::vector<Trajectory>& dataset,
                               int probes, Scalar h, Scalar tol) {
  IdmModel model =
      jittered_copy(make_idm_model(cfg.input_spec(), ModelShape{}, cfg.train.seed),
                    cfg.train.seed);
  std::vector<BatchSample> batch;
  Rng rng(derive_seed(cfg.train.seed, 0x6C));
  for (int i = 0; i < 16; ++i) {
    const auto& tr = dataset[uniform_index(rng, dataset.size())];
    const int t = static_cast<int>(uniform_index(rng, tr.length()));
    batch.push_back({&tr, &tr, t, static_select(t, cfg.window.skip, tr.length())});
  }
  return grad_check(model, batch, probes, h, tol, cfg.train.seed);
}

int cmd_gen_data(const RunConfig& cfg, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  const GenConfig gen = cfg.gen_config();
  Manifest m;
  m.command = "gen-data";
  m.config_hash = config_hash(cfg);

  for (ScenarioId id : cfg.scenarios) {
    const std::string fname = std::string("ref_") + scenario_name(id) + ".jsonl";
    write_trajectory_file(out_dir / fname, make_reference(id, cfg.data_seed, gen));
    m.files.push_back(fname);
  }
  const auto dataset = generate_dataset(cfg.scenarios, cfg.n_per, cfg.data_seed, gen);
  int run_idx = 0;
  std::string prev_scenario;
  for (const auto& tr : dataset) {
    if (tr.meta.scenario != prev_scenario) {
      run_idx = 0;
      prev_scenario = tr.meta.scenario;
    }
    const std::string fname = "train_" + tr.meta.scenario + "_" + run_tag(run_idx++) + ".jsonl";
    write_trajectory_file(out_dir / fname, tr);
    m.files.push_back(fname);
  }
  m.extra["obs_dim"] = std::to_string(obs_dim(gen.obs));
  m.extra["references"] = std::to_string(cfg.scenarios.size());
  m.extra["train_trajectories"] = std::to_string(dataset.size());
  write_manifest(out_dir / "manifest.json", std::move(m));
  std::cout << "wrote " << cfg.scenarios.size() << " references and " << dataset.size()
            << " training trajectories to " << out_dir.string() << '\n';
  return 0;
}

int cmd_train(const RunConfig& base_cfg, int jobs, const fs::path& data_dir,
              const fs::path& out_ckpt, bool do_grad_check, const std::string& ablation) {
  RunConfig cfg = base_cfg;
  InputSpec input = cfg.input_spec();
  std::string ablation_label = "none";
  if (!ablation.empty()) {
    const auto configs = standard_ablations(cfg.selector.skip);
    const AblationConfig* hit = nullptr;
    for (const auto& c : configs) {
      if (c.label == ablation || (ablation == "bc" && c.label.rfind("bc-", 0) == 0) ||
          (ablation == "full" && c.label == "10p-10f")) {
        hit = &c;
        break;
      }
    }
    if (hit == nullptr) {
      std::string valid = "bc, full";
      for (const auto& c : configs) {
        valid += ", " + c.label;
      }
      throw std::invalid_argument("unknown ablation \"" + ablation + "\" (valid: " + valid + ")");
    }
    input.window = hit->window;
    input.mask = hit->mask;
    input.obs_dim = obs_dim(ObsSpec{input.window.future, cfg.stride});
    ablation_label = hit->label;
  }

  const auto dataset = load_prefixed(data_dir, "train_");
  check_obs_dim(dataset, input.obs_dim, "training trajectory");

  TrainConfig tc = cfg.train;
  tc.jobs = jobs;

  if (do_grad_check) {
    RunConfig check_cfg = cfg;
    check_cfg.window = input.window;
    const auto rep = run_grad_check(check_cfg, dataset, 100, 1e-5, 1e-4);
    std::cout << "gradient check: max relative error " << scalar_str(rep.max_rel_err) << " over "
              << rep.probes << " probes\n";
    if (!rep.pass) {
      throw std::runtime_error("gradient check failed, aborting before training");
    }
  }

  IdmModel model = make_idm_model(input, ModelShape{}, tc.seed);
  const TrainResult result = train(model, dataset, tc);
  for (std::size_t e = 0; e < result.epochs.size(); ++e) {
    print_loss_line(std::cout,
                    "epoch " + std::to_string(e + 1) + "/" + std::to_string(result.epochs.size()),
                    result.epochs[e]);
  }

  const fs::path out_dir = out_ckpt.has_parent_path() ? out_ckpt.parent_path() : fs::path(".");
  fs::create_directories(out_dir);
  save_checkpoint(out_ckpt, model);
  write_epoch_csv(out_dir / "epochs.csv", result.epochs);

  Manifest m;
  m.command = "train";
  m.config_hash = config_hash(cfg);
  m.files = {out_ckpt.filename().string(), "epochs.csv"};
  m.extra["ablation"] = ablation_label;
  m.extra["epochs"] = std::to_string(result.epochs.size());
  if (!result.epochs.empty()) {
    m.extra["final_total"] = scalar_str(result.epochs.back().total);
  }
  write_manifest(out_dir / "manifest.json", std::move(m));
  std::cout << "checkpoint: " << out_ckpt.string() << '\n';
  return 0;
}

int cmd_eval(const RunConfig& base_cfg, int jobs, const fs::path& ckpt, const fs::path& refs_dir,
             const fs::path& out_dir, const std::string& strategy_str, int k_override,
             bool dtw_aligned, const std::string& sweep_radii, const std::string& sweep_io) {
  RunConfig cfg = base_cfg;
  if (!strategy_str.empty()) {
    cfg.selector.strategy = strategy_from_name(strategy_str);
  }
  if (k_override >= 0) {
    cfg.selector.skip = k_override;
  }
  if (dtw_aligned) {
    cfg.dtw_aligned = true;
  }
  cfg.selector.validate();

  const IdmModel model = load_checkpoint(ckpt);
  const auto refs = load_prefixed(refs_dir, "ref_");
  check_obs_dim(refs, model.input.obs_dim, "reference");

  EvalConfig ec = cfg.eval_config(jobs);
  ec.rollout.obs = model.input.obs_spec();
  const IdmPolicy policy(model);
  fs::create_directories(out_dir);

  if (!sweep_radii.empty() || !sweep_io.empty()) {
    std::vector<Scalar> radii;
    if (!sweep_radii.empty()) {
      radii = parse_scalar_list(sweep_radii, "--sweep-radius");
    }
    std::vector<std::pair<Scalar, Scalar>> pairs;
    if (!sweep_io.empty()) {
      pairs = parse_pair_list(sweep_io, "--sweep-io");
    }
    const auto rows = sweep_radius(policy, refs, ec, radii, pairs);
    write_sweep_csv(out_dir / "sweep.csv", rows);
    Manifest m;
    m.command = "eval";
    m.config_hash = config_hash(cfg);
    m.files = {"sweep.csv"};
    m.extra["sweep_rows"] = std::to_string(rows.size());
    write_manifest(out_dir / "manifest.json", std::move(m));
    std::cout << "sweep: " << rows.size() << " rows -> " << (out_dir / "sweep.csv").string()
              << '\n';
    return 0;
  }

  const EvalTable table = evaluate(policy, refs, ec);
  write_eval_csv(out_dir / "eval.csv", table);
  write_medians_csv(out_dir / "medians.csv", table.medians);

  Manifest m;
  m.command = "eval";
  m.config_hash = config_hash(cfg);
  m.files = {"eval.csv", "medians.csv"};
  for (const auto& ref : refs) {
    const RolloutResult rr = run_rollout(policy, ref, ec.rollout, ec.base_seed);
    const std::string trace_name = "trace_" + ref.meta.scenario + ".csv";
    const std::string curve_name = "curve_" + ref.meta.scenario + ".csv";
    write_trace_csv(out_dir / trace_name, rr.trace);
    write_curve_csv(out_dir / curve_name,
                    coverage_curve(positions_of(rr.agent), positions_of(ref), 101));
    m.files.push_back(trace_name);
    m.files.push_back(curve_name);
  }
  m.extra["strategy"] = strategy_name(cfg.selector.strategy);
  m.extra["K"] = std::to_string(cfg.selector.skip);
  m.extra["n_seeds"] = std::to_string(cfg.n_seeds);
  m.extra["base_seed"] = std::to_string(cfg.base_seed);
  m.extra["sigma"] = scalar_str(cfg.sigma);
  write_manifest(out_dir / "manifest.json", std::move(m));

  print_median_table(std::cout, table.medians);
  return 0;
}

int cmd_sweep(const RunConfig& base_cfg, int jobs, const fs::path& ckpt, const fs::path& refs_dir,
              const fs::path& out_dir, const std::string& radii_str, const std::string& io_str) {
  const auto radii = parse_scalar_list(radii_str, "--radii");
  const auto pairs = parse_pair_list(io_str, "--io");

  const IdmModel model = load_checkpoint(ckpt);
  const auto refs = load_prefixed(refs_dir, "ref_");
  check_obs_dim(refs, model.input.obs_dim, "reference");

  EvalConfig ec = base_cfg.eval_config(jobs);
  ec.rollout.obs = model.input.obs_spec();
  const IdmPolicy policy(model);

  const auto rows = sweep_radius(policy, refs, ec, radii, pairs);
  fs::create_directories(out_dir);
  write_sweep_csv(out_dir / "sweep.csv", rows);
  Manifest m;
  m.command = "sweep";
  m.config_hash = config_hash(base_cfg);
  m.files = {"sweep.csv"};
  m.extra["sweep_rows"] = std::to_string(rows.size());
  write_manifest(out_dir / "manifest.json", std::move(m));
  std::cout << "sweep: " << rows.size() << " rows -> " << (out_dir / "sweep.csv").string() << '\n';
  return 0;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    rows.push_back(std::move(cells));
  }
  return rows;
}

int cmd_report(const fs::path& run_dir) {
  const fs::path mpath = run_dir / "manifest.json";
  std::ifstream in(mpath);
  if (!in) {
    throw std::runtime_error("no manifest in " + run_dir.string() +
                             "; nothing to report on (run eval first)");
  }
  auto j = nlohmann::json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw std::runtime_error("corrupt manifest: " + mpath.string());
  }
  const std::string hash = j.value("config_hash", std::string("unknown"));
  const auto files = j.value("files", std::vector<std::string>{});

  std::ostringstream summary;
  summary << "run: " << run_dir.string() << '\n';
  summary << "config hash: " << hash << '\n';

  const bool has_medians =
      std::find(files.begin(), files.end(), "medians.csv") != files.end();
  const bool has_sweep = std::find(files.begin(), files.end(), "sweep.csv") != files.end();
  if (has_medians) {
    const auto medians = read_csv(run_dir / "medians.csv");
    std::vector<MedianRow> rows;
    for (std::size_t i = 1; i < medians.size(); ++i) {
      const auto& c = medians[i];
      if (c.size() != 5) {
        throw std::runtime_error("medians.csv row " + std::to_string(i + 1) +
                                 " has " + std::to_string(c.size()) + " columns, expected 5");
      }
      try {
        rows.push_back({c[0], c[1], std::stod(c[2]), std::stod(c[3]), std::stod(c[4])});
      } catch (const std::exception&) {
        throw std::runtime_error("medians.csv row " + std::to_string(i + 1) +
                                 " has a non-numeric metric cell");
      }
    }
    summary << "\nmedians over seeds (per-seed rows in eval.csv):\n";
    std::ostringstream table;
    print_median_table(table, rows);
    summary << table.str();
    std::vector<std::string> curves;
    for (const auto& f : files) {
      if (f.rfind("curve_", 0) == 0) {
        curves.push_back(f);
      }
    }
    if (!curves.empty()) {
      summary << "\ncoverage-curve data (r,coverage per trajectory):\n";
      for (const auto& f : curves) {
        summary << "  " << f << '\n';
      }
    }
  } else if (has_sweep) {
    const auto sweep = read_csv(run_dir / "sweep.csv");
    summary << "\nradius sweep (" << (sweep.empty() ? 0 : sweep.size() - 1)
            << " rows, full table in sweep.csv):\n";
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      const auto& c = sweep[i];
      for (std::size_t k = 0; k < c.size(); ++k) {
        summary << (k ? "," : "") << c[k];
      }
      summary << '\n';
    }
  } else {
    throw std::runtime_error("manifest in " + run_dir.string() +
                             " lists no summary tables (medians.csv or sweep.csv)");
  }

  std::ofstream out(run_dir / "summary.txt", std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + (run_dir / "summary.txt").string());
  }
  out << summary.str();
  std::cout << summary.str();
  return 0;
}

int cmd_grad_check(const RunConfig& cfg, int probes, Scalar h, Scalar tol) {
  const std::vector<ScenarioId> one = {cfg.scenarios.front()};
  const auto dataset = generate_dataset(one, 2, cfg.data_seed, cfg.gen_config());
  const auto rep = run_grad_check(cfg, dataset, probes, h, tol);
  std::cout << "gradient check: max relative error " << scalar_str(rep.max_rel_err) << " over "
            << rep.probes << " probes: " << (rep.pass ? "pass" : "FAIL") << '\n';
  if (!rep.pass) {
    throw std::runtime_error("gradient check failed");
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"IDM-K trajectory following: data generation, training, and evaluation"};
  app.require_subcommand(1);

  std::string config_path;
  int jobs = 1;
  app.add_option("--config", config_path, "run configuration file (INI)")
      ->envname("IDMK_CONFIG");
  app.add_option("--jobs", jobs, "worker threads for gradients and rollouts")
      ->check(CLI::PositiveNumber);

  auto* gen = app.add_subcommand("gen-data", "write reference + training trajectories");
  std::string gen_out;
  gen->add_option("--out", gen_out, "output directory")->required();

  auto* train_cmd = app.add_subcommand("train", "train a model; writes checkpoint, epochs.csv, "
                                                "and manifest.json next to the checkpoint");
  std::string train_data;
  std::string train_out;
  std::string train_ablation;
  bool train_grad_check = false;
  train_cmd->add_option("--data", train_data, "gen-data output directory")->required();
  train_cmd->add_option("--out", train_out, "checkpoint path to write")->required();
  train_cmd->add_option("--ablation", train_ablation,
                        "train a named variant (bc, full, or a window/modality label); the data "
                        "directory must have been generated with the variant's future window");
  train_cmd->add_flag("--grad-check", train_grad_check,
                      "verify gradients against finite differences before training");

  auto* eval_cmd = app.add_subcommand("eval", "roll out a checkpoint against references");
  std::string eval_ckpt;
  std::string eval_refs;
  std::string eval_out;
  std::string eval_strategy;
  int eval_k = -1;
  bool eval_dtw_aligned = false;
  std::string eval_sweep_radii;
  std::string eval_sweep_io;
  eval_cmd->add_option("--checkpoint", eval_ckpt, "model checkpoint")->required();
  eval_cmd->add_option("--refs", eval_refs, "directory holding ref_*.jsonl + manifest")
      ->required();
  eval_cmd->add_option("--out", eval_out, "output directory")->required();
  eval_cmd->add_option("--strategy", eval_strategy,
                       "conditioning strategy: static, closest, radius, inner_outer");
  eval_cmd->add_option("--K", eval_k, "look-ahead offset override")->check(CLI::NonNegativeNumber);
  eval_cmd->add_flag("--dtw-aligned", eval_dtw_aligned,
                     "score AUC on DTW-aligned distances instead of same-index pairs");
  eval_cmd->add_option("--sweep-radius", eval_sweep_radii,
                       "comma-separated radii; runs the sweep instead of the standard tables");
  eval_cmd->add_option("--sweep-io", eval_sweep_io,
                       "comma-separated inner:outer pairs for the sweep");

  auto* sweep_cmd = app.add_subcommand("sweep", "radius sweep across strategies");
  std::string sweep_ckpt;
  std::string sweep_refs;
  std::string sweep_out;
  std::string sweep_radii = "1,2,4,6,8,10";
  std::string sweep_io = "0:6,2:8";
  sweep_cmd->add_option("--checkpoint", sweep_ckpt, "model checkpoint")->required();
  sweep_cmd->add_option("--refs", sweep_refs, "directory holding ref_*.jsonl + manifest")
      ->required();
  sweep_cmd->add_option("--out", sweep_out, "output directory")->required();
  sweep_cmd->add_option("--radii", sweep_radii, "comma-separated Radius gates");
  sweep_cmd->add_option("--io", sweep_io, "comma-separated inner:outer pairs");

  auto* report_cmd = app.add_subcommand("report", "summarize an eval output directory");
  std::string report_run;
  report_cmd->add_option("--run", report_run, "eval output directory")->required();

  auto* gc_cmd = app.add_subcommand("grad-check",
                                    "finite-difference gradient verification on a small batch");
  int gc_probes = 100;
  Scalar gc_h = 1e-5;
  Scalar gc_tol = 1e-4;
  gc_cmd->add_option("--probes", gc_probes, "parameters to probe")->check(CLI::PositiveNumber);
  gc_cmd->add_option("--step", gc_h, "finite-difference step");
  gc_cmd->add_option("--tol", gc_tol, "max relative error to accept");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    const RunConfig cfg = load_effective_config(config_path);
    if (app.got_subcommand(gen)) {
      return cmd_gen_data(cfg, gen_out);
    }
    if (app.got_subcommand(train_cmd)) {
      return cmd_train(cfg, jobs, train_data, train_out, train_grad_check, train_ablation);
    }
    if (app.got_subcommand(eval_cmd)) {
      return cmd_eval(cfg, jobs, eval_ckpt, eval_refs, eval_out, eval_strategy, eval_k,
                      eval_dtw_aligned, eval_sweep_radii, eval_sweep_io);
    }
    if (app.got_subcommand(sweep_cmd)) {
      return cmd_sweep(cfg, jobs, sweep_ckpt, sweep_refs, sweep_out, sweep_radii, sweep_io);
    }
    if (app.got_subcommand(report_cmd)) {
      return cmd_report(report_run);
    }
    if (app.got_subcommand(gc_cmd)) {
      return cmd_grad_check(cfg, gc_probes, gc_h, gc_tol);
    }
    std::cerr << "error: no subcommand\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace idmk
