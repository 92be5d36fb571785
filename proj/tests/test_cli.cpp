#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "idmk/checkpoint.hpp"
#include "idmk/cli.hpp"
#include "idmk/net.hpp"

using namespace idmk;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  args.insert(args.begin(), "idmk");
  std::vector<const char*> argv;
  for (const auto& a : args) {
    argv.push_back(a.c_str());
  }
  std::ostringstream out;
  std::ostringstream err;
  auto* old_out = std::cout.rdbuf(out.rdbuf());
  auto* old_err = std::cerr.rdbuf(err.rdbuf());
  CliResult res;
  res.code = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old_out);
  std::cerr.rdbuf(old_err);
  res.out = out.str();
  res.err = err.str();
  return res;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("idmk_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_small_config(const fs::path& dir) {
  const fs::path path = dir / "cfg.ini";
  std::ofstream out(path);
  out << "[window]\npast = 4\nfuture = 4\n"
         "[selector]\nK = 4\n"
         "[train]\nepochs = 2\nupdates_per_epoch = 10\nbatch_size = 8\n"
         "[eval]\nseeds = 2\n"
         "[data]\nscenarios = loop,crossroads-left\nn_per_scenario = 2\n";
  return path;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& path) {
  const std::string text = slurp(path);
  return text.substr(0, text.find('\n'));
}

}  // namespace

TEST_CASE("help exits zero and names every subcommand") {
  const CliResult res = run({"--help"});
  CHECK(res.code == 0);
  for (const char* name : {"gen-data", "train", "eval", "sweep", "report", "grad-check"}) {
    CAPTURE(name);
    CHECK(res.out.find(name) != std::string::npos);
  }
}

TEST_CASE("usage errors exit with code one") {
  CHECK(run({}).code == 1);
  CHECK(run({"--bogus"}).code == 1);
  CHECK(run({"--jobs", "0", "gen-data", "--out", "x"}).code == 1);
  CHECK(run({"eval", "--checkpoint", "x"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);

  const CliResult res = run({"--bogus"});
  CHECK(res.err.find("error:") != std::string::npos);
}

TEST_CASE("config problems split into usage and runtime failures") {
  const fs::path dir = fresh_dir("badcfg");
  const fs::path bad = dir / "bad.ini";
  std::ofstream(bad) << "[env]\nvmax = nope\n";

  const CliResult missing = run({"--config", (dir / "absent.ini").string(), "gen-data", "--out",
                                 (dir / "d").string()});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open config file") != std::string::npos);

  const CliResult invalid = run({"--config", bad.string(), "gen-data", "--out",
                                 (dir / "d").string()});
  CHECK(invalid.code == 1);
  CHECK(invalid.err.find("not a number") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("the full pipeline runs end to end") {
  const fs::path dir = fresh_dir("pipeline");
  const fs::path cfg = write_small_config(dir);
  const fs::path data = dir / "data";
  const fs::path ckpt = dir / "run" / "model.json";
  const fs::path evald = dir / "eval";

  const CliResult gen = run({"--config", cfg.string(), "gen-data", "--out", data.string()});
  REQUIRE(gen.code == 0);
  CHECK(fs::exists(data / "manifest.json"));
  CHECK(fs::exists(data / "ref_loop.jsonl"));
  CHECK(fs::exists(data / "ref_crossroads-left.jsonl"));
  CHECK(fs::exists(data / "train_loop_000.jsonl"));
  CHECK(fs::exists(data / "train_loop_001.jsonl"));
  CHECK(fs::exists(data / "train_crossroads-left_001.jsonl"));

  {
    const auto m = nlohmann::json::parse(slurp(data / "manifest.json"));
    CHECK(m.at("command") == "gen-data");
    CHECK(m.at("config_hash").get<std::string>().size() == 16);
    const auto files = m.at("files").get<std::vector<std::string>>();
    CHECK(files.size() == 6);
    CHECK(std::is_sorted(files.begin(), files.end()));
    CHECK(m.at("extra").at("obs_dim") == "12");
  }

  const CliResult tr = run({"--config", cfg.string(), "train", "--data", data.string(), "--out",
                            ckpt.string()});
  REQUIRE(tr.code == 0);
  CHECK(tr.out.find("epoch 1/2") != std::string::npos);
  CHECK(tr.out.find("epoch 2/2") != std::string::npos);
  CHECK(tr.out.find("checkpoint: ") != std::string::npos);
  CHECK(fs::exists(ckpt));
  CHECK(first_line(dir / "run" / "epochs.csv") ==
        "epoch,total,button_loss,sticks_loss,button_err,sticks_err");
  {
    const auto m = nlohmann::json::parse(slurp(dir / "run" / "manifest.json"));
    CHECK(m.at("command") == "train");
    CHECK(m.at("extra").at("ablation") == "none");
    CHECK(m.at("extra").at("epochs") == "2");
  }

  const IdmModel model = load_checkpoint(ckpt);
  CHECK(model.input.obs_dim == 12);
  CHECK(model.input.window.past == 4);
  CHECK(model.input.window.future == 4);
  CHECK(model.input.window.skip == 4);
  CHECK(flatten_params(load_checkpoint(ckpt).net) == flatten_params(model.net));

  const CliResult ev = run({"--config", cfg.string(), "eval", "--checkpoint", ckpt.string(),
                            "--refs", data.string(), "--out", evald.string()});
  REQUIRE(ev.code == 0);
  CHECK(first_line(evald / "eval.csv") == "trajectory,seed,strategy,auc,fi,dtw,R");
  CHECK(first_line(evald / "medians.csv") == "trajectory,strategy,auc,fi,dtw");
  CHECK(first_line(evald / "trace_loop.csv") == "t,fut_idx,dist");
  CHECK(first_line(evald / "curve_loop.csv") == "r,coverage");
  CHECK(fs::exists(evald / "trace_crossroads-left.csv"));
  CHECK(fs::exists(evald / "curve_crossroads-left.csv"));
  CHECK(ev.out.find("trajectory") != std::string::npos);
  CHECK(ev.out.find("radius") != std::string::npos);
  {
    const auto m = nlohmann::json::parse(slurp(evald / "manifest.json"));
    CHECK(m.at("command") == "eval");
    CHECK(m.at("extra").at("strategy") == "radius");
    CHECK(m.at("extra").at("K") == "4");
    CHECK(m.at("extra").at("n_seeds") == "2");
    const auto files = m.at("files").get<std::vector<std::string>>();
    CHECK(files.size() == 6);  // eval, medians, two traces, two curves
  }
  {
    // per-seed rows: 2 scenarios x 2 seeds plus header
    std::istringstream rows(slurp(evald / "eval.csv"));
    std::string line;
    int n = 0;
    while (std::getline(rows, line)) {
      ++n;
    }
    CHECK(n == 5);
  }

  const CliResult rep = run({"report", "--run", evald.string()});
  REQUIRE(rep.code == 0);
  CHECK(fs::exists(evald / "summary.txt"));
  const std::string summary = slurp(evald / "summary.txt");
  CHECK(summary.find("config hash:") != std::string::npos);
  CHECK(summary.find("loop") != std::string::npos);
  CHECK(summary.find("crossroads-left") != std::string::npos);
  CHECK(summary.find("curve_loop.csv") != std::string::npos);
  CHECK(rep.out == summary);

  const fs::path sweepd = dir / "sweep";
  const CliResult sw = run({"--config", cfg.string(), "sweep", "--checkpoint", ckpt.string(),
                            "--refs", data.string(), "--out", sweepd.string(), "--radii", "3",
                            "--io", "1:4"});
  REQUIRE(sw.code == 0);
  CHECK(first_line(sweepd / "sweep.csv") == "strategy,radius,inner,outer,trajectory,auc,fi");
  {
    std::istringstream rows(slurp(sweepd / "sweep.csv"));
    std::string line;
    int n = 0;
    while (std::getline(rows, line)) {
      ++n;
    }
    CHECK(n == 5);  // header + (1 radius + 1 pair) x 2 trajectories
  }

  const CliResult rep_sweep = run({"report", "--run", sweepd.string()});
  CHECK(rep_sweep.code == 0);
  CHECK(slurp(sweepd / "summary.txt").find("radius sweep") != std::string::npos);

  const fs::path sweepd2 = dir / "sweep2";
  const CliResult sw2 = run({"--config", cfg.string(), "eval", "--checkpoint", ckpt.string(),
                             "--refs", data.string(), "--out", sweepd2.string(),
                             "--sweep-radius", "2,4"});
  REQUIRE(sw2.code == 0);
  CHECK(fs::exists(sweepd2 / "sweep.csv"));
  CHECK_FALSE(fs::exists(sweepd2 / "eval.csv"));
  fs::remove_all(dir);
}

TEST_CASE("generated data is byte-identical across reruns") {
  const fs::path dir = fresh_dir("gen_repro");
  const fs::path cfg = write_small_config(dir);
  REQUIRE(run({"--config", cfg.string(), "gen-data", "--out", (dir / "a").string()}).code == 0);
  REQUIRE(run({"--config", cfg.string(), "gen-data", "--out", (dir / "b").string()}).code == 0);
  int compared = 0;
  for (const auto& entry : fs::directory_iterator(dir / "a")) {
    const auto name = entry.path().filename();
    CAPTURE(name.string());
    CHECK(slurp(entry.path()) == slurp(dir / "b" / name));
    ++compared;
  }
  CHECK(compared == 7);
  fs::remove_all(dir);
}

TEST_CASE("training is byte-identical across reruns") {
  const fs::path dir = fresh_dir("train_repro");
  const fs::path cfg = write_small_config(dir);
  const fs::path data = dir / "data";
  REQUIRE(run({"--config", cfg.string(), "gen-data", "--out", data.string()}).code == 0);
  for (const char* tag : {"a", "b"}) {
    const CliResult tr = run({"--config", cfg.string(), "--jobs", tag[0] == 'a' ? "1" : "2",
                              "train", "--data", data.string(), "--out",
                              (dir / tag / "model.json").string()});
    REQUIRE(tr.code == 0);
  }
  for (const char* name : {"model.json", "epochs.csv", "manifest.json"}) {
    CAPTURE(name);
    CHECK(slurp(dir / "a" / name) == slurp(dir / "b" / name));
  }
  fs::remove_all(dir);
}

TEST_CASE("train refuses data generated for a different window") {
  const fs::path dir = fresh_dir("train_mismatch");
  const fs::path cfg = write_small_config(dir);
  const fs::path data = dir / "data";
  REQUIRE(run({"--config", cfg.string(), "gen-data", "--out", data.string()}).code == 0);
  // default config expects 10 future entries per observation, the data has 4
  const CliResult tr = run({"train", "--data", data.string(), "--out",
                            (dir / "model.json").string()});
  CHECK(tr.code == 2);
  CHECK(tr.err.find("observation dim") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("train reports missing or unknown inputs as runtime failures") {
  const fs::path dir = fresh_dir("train_missing");
  const CliResult tr = run({"train", "--data", (dir / "no_data").string(), "--out",
                            (dir / "model.json").string()});
  CHECK(tr.code == 2);
  CHECK(tr.err.find("missing manifest") != std::string::npos);

  const CliResult ab = run({"train", "--data", dir.string(), "--out",
                            (dir / "model.json").string(), "--ablation", "nonsense"});
  CHECK(ab.code == 1);
  CHECK(ab.err.find("unknown ablation") != std::string::npos);
  CHECK(ab.err.find("10p-10f") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("eval validates strategy overrides") {
  const fs::path dir = fresh_dir("eval_strategy");
  const fs::path cfg = write_small_config(dir);
  const fs::path data = dir / "data";
  const fs::path ckpt = dir / "model.json";
  REQUIRE(run({"--config", cfg.string(), "gen-data", "--out", data.string()}).code == 0);
  REQUIRE(run({"--config", cfg.string(), "train", "--data", data.string(), "--out",
               ckpt.string()}).code == 0);

  const CliResult bogus = run({"--config", cfg.string(), "eval", "--checkpoint", ckpt.string(),
                               "--refs", data.string(), "--out", (dir / "e").string(),
                               "--strategy", "zigzag"});
  CHECK(bogus.code == 1);
  CHECK(bogus.err.find("unknown strategy") != std::string::npos);

  CHECK(run({"--config", cfg.string(), "eval", "--checkpoint", ckpt.string(), "--refs",
             data.string(), "--out", (dir / "e").string(), "--K", "-3"}).code == 1);

  const CliResult st = run({"--config", cfg.string(), "eval", "--checkpoint", ckpt.string(),
                            "--refs", data.string(), "--out", (dir / "e2").string(),
                            "--strategy", "static"});
  REQUIRE(st.code == 0);
  const std::string medians = slurp(dir / "e2" / "medians.csv");
  CHECK(medians.find(",static,") != std::string::npos);
  CHECK(medians.find(",radius,") == std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("report failure modes are runtime errors") {
  const fs::path dir = fresh_dir("report_bad");
  const CliResult none = run({"report", "--run", dir.string()});
  CHECK(none.code == 2);
  CHECK(none.err.find("nothing to report") != std::string::npos);

  std::ofstream(dir / "manifest.json")
      << "{\"command\":\"eval\",\"config_hash\":\"x\",\"files\":[\"medians.csv\"]}";
  std::ofstream(dir / "medians.csv")
      << "trajectory,strategy,auc,fi,dtw\nloop,radius,0.9,oops,1.5\n";
  const CliResult corrupt = run({"report", "--run", dir.string()});
  CHECK(corrupt.code == 2);
  CHECK(corrupt.err.find("non-numeric") != std::string::npos);

  std::ofstream(dir / "manifest.json")
      << "{\"command\":\"eval\",\"config_hash\":\"x\",\"files\":[]}";
  const CliResult empty = run({"report", "--run", dir.string()});
  CHECK(empty.code == 2);
  CHECK(empty.err.find("no summary tables") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("sweep validates its lists") {
  const fs::path dir = fresh_dir("sweep_bad");
  const CliResult bad = run({"sweep", "--checkpoint", "x", "--refs", "y", "--out",
                             dir.string(), "--radii", "abc"});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("not a number") != std::string::npos);

  const CliResult pairless = run({"sweep", "--checkpoint", "x", "--refs", "y", "--out",
                                  dir.string(), "--io", "3"});
  CHECK(pairless.code == 1);
  CHECK(pairless.err.find("expected inner:outer") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("grad-check passes on a small config") {
  const fs::path dir = fresh_dir("gradcheck");
  const fs::path cfg = write_small_config(dir);
  const CliResult res = run({"--config", cfg.string(), "grad-check", "--probes", "30"});
  CHECK(res.code == 0);
  CHECK(res.out.find("gradient check") != std::string::npos);
  CHECK(res.out.find("pass") != std::string::npos);
  fs::remove_all(dir);
}
