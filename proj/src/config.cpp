#include "idmk/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace idmk {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) {
    return "";
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(int lineno, const std::string& what) {
  throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + what);
}

int to_int(const std::string& v, int lineno) {
  std::size_t used = 0;
  int out = 0;
  try {
    out = std::stoi(v, &used);
  } catch (const std::invalid_argument&) {
    fail(lineno, "not an integer: \"" + v + "\"");
  } catch (const std::out_of_range&) {
    fail(lineno, "integer out of range: \"" + v + "\"");
  }
  if (used != v.size()) {
    fail(lineno, "trailing characters in integer \"" + v + "\"");
  }
  return out;
}

std::uint64_t to_u64(const std::string& v, int lineno) {
  std::size_t used = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(v, &used);
  } catch (const std::exception&) {
    fail(lineno, "not a non-negative integer: \"" + v + "\"");
  }
  if (used != v.size()) {
    fail(lineno, "trailing characters in integer \"" + v + "\"");
  }
  return out;
}

Scalar to_scalar(const std::string& v, int lineno) {
  std::size_t used = 0;
  Scalar out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    fail(lineno, "not a number: \"" + v + "\"");
  }
  if (used != v.size()) {
    fail(lineno, "trailing characters in number \"" + v + "\"");
  }
  return out;
}

bool to_bool(const std::string& v, int lineno) {
  if (v == "true" || v == "1") {
    return true;
  }
  if (v == "false" || v == "0") {
    return false;
  }
  fail(lineno, "not a boolean (true/false): \"" + v + "\"");
}

// hazards = cx:cy:radius:bias_x:bias_y;...
std::vector<HazardRegion> to_hazards(const std::string& v, int lineno) {
  std::vector<HazardRegion> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) {
      continue;
    }
    std::stringstream fields(item);
    std::string f;
    std::vector<Scalar> vals;
    while (std::getline(fields, f, ':')) {
      vals.push_back(to_scalar(trim(f), lineno));
    }
    if (vals.size() != 5) {
      fail(lineno, "hazard region needs cx:cy:radius:bias_x:bias_y");
    }
    out.push_back({vals[0], vals[1], vals[2], vals[3], vals[4]});
  }
  return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(lineno, "unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "env" && section != "window" && section != "train" &&
          section != "selector" && section != "eval" && section != "data" &&
          section != "paths") {
        fail(lineno, "unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail(lineno, "expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      fail(lineno, "key \"" + key + "\" outside any section");
    }

    if (section == "env") {
      if (key == "buttons") cfg.space.buttons = to_int(value, lineno);
      else if (key == "sticks") cfg.space.sticks = to_int(value, lineno);
      else if (key == "vmax") cfg.env.vmax = to_scalar(value, lineno);
      else if (key == "damping") cfg.env.damping = to_scalar(value, lineno);
      else if (key == "gain") cfg.env.gain = to_scalar(value, lineno);
      else if (key == "arena") cfg.env.arena = to_scalar(value, lineno);
      else if (key == "sigma") cfg.sigma = to_scalar(value, lineno);
      else if (key == "hazards") cfg.hazards = to_hazards(value, lineno);
      else fail(lineno, "unknown key \"" + key + "\" in [env]");
    } else if (section == "window") {
      if (key == "past") cfg.window.past = to_int(value, lineno);
      else if (key == "future") cfg.window.future = to_int(value, lineno);
      else if (key == "stride") cfg.stride = to_int(value, lineno);
      else fail(lineno, "unknown key \"" + key + "\" in [window]");
    } else if (section == "train") {
      if (key == "epochs") cfg.train.epochs = to_int(value, lineno);
      else if (key == "updates_per_epoch") cfg.train.updates_per_epoch = to_int(value, lineno);
      else if (key == "batch_size") cfg.train.batch_size = to_int(value, lineno);
      else if (key == "learning_rate") cfg.train.learning_rate = to_scalar(value, lineno);
      else if (key == "seed") cfg.train.seed = to_u64(value, lineno);
      else if (key == "optimizer") {
        if (value == "adam") cfg.train.optimizer = Optimizer::kAdam;
        else if (value == "sgd") cfg.train.optimizer = Optimizer::kSgd;
        else fail(lineno, "optimizer must be adam or sgd");
      } else fail(lineno, "unknown key \"" + key + "\" in [train]");
    } else if (section == "selector") {
      if (key == "strategy") {
        try {
          cfg.selector.strategy = strategy_from_name(value);
        } catch (const std::invalid_argument& e) {
          fail(lineno, e.what());
        }
      } else if (key == "K") cfg.selector.skip = to_int(value, lineno);
      else if (key == "r") cfg.selector.radius = to_scalar(value, lineno);
      else if (key == "r_in") cfg.selector.inner = to_scalar(value, lineno);
      else if (key == "r_out") cfg.selector.outer = to_scalar(value, lineno);
      else fail(lineno, "unknown key \"" + key + "\" in [selector]");
    } else if (section == "eval") {
      if (key == "seeds") cfg.n_seeds = to_int(value, lineno);
      else if (key == "base_seed") cfg.base_seed = to_u64(value, lineno);
      else if (key == "r_fi") cfg.r_fi = to_scalar(value, lineno);
      else if (key == "dtw_aligned") cfg.dtw_aligned = to_bool(value, lineno);
      else fail(lineno, "unknown key \"" + key + "\" in [eval]");
    } else if (section == "data") {
      if (key == "scenarios") {
        try {
          cfg.scenarios = parse_scenario_list(value);
        } catch (const std::invalid_argument& e) {
          fail(lineno, e.what());
        }
      } else if (key == "n_per_scenario") cfg.n_per = to_int(value, lineno);
      else if (key == "seed") cfg.data_seed = to_u64(value, lineno);
      else if (key == "jitter") cfg.jitter = to_scalar(value, lineno);
      else fail(lineno, "unknown key \"" + key + "\" in [data]");
    } else if (section == "paths") {
      if (key == "data_dir") cfg.data_dir = value;
      else if (key == "run_dir") cfg.run_dir = value;
      else if (key == "checkpoint") cfg.checkpoint = value;
      else fail(lineno, "unknown key \"" + key + "\" in [paths]");
    }
  }
  cfg.window.skip = cfg.selector.skip;
  cfg.validate();
  return cfg;
}

RunConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + path.string());
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void RunConfig::validate() const {
  if (space.buttons < 0 || space.sticks < 0 || space.buttons + space.sticks == 0) {
    throw std::invalid_argument("config: action space needs at least one head");
  }
  if (!(env.vmax > 0.0) || !(env.arena > 0.0)) {
    throw std::invalid_argument("config: vmax and arena must be > 0");
  }
  if (sigma < 0.0) {
    throw std::invalid_argument("config: sigma must be >= 0");
  }
  for (const auto& h : hazards) {
    if (!(h.radius > 0.0)) {
      throw std::invalid_argument("config: hazard radius must be > 0");
    }
  }
  window.validate();
  if (stride < 1) {
    throw std::invalid_argument("config: stride must be >= 1");
  }
  train.validate();
  selector.validate();
  if (n_seeds < 1) {
    throw std::invalid_argument("config: eval seeds must be >= 1");
  }
  if (!(r_fi > 0.0)) {
    throw std::invalid_argument("config: r_fi must be > 0");
  }
  if (n_per < 1) {
    throw std::invalid_argument("config: n_per_scenario must be >= 1");
  }
  if (jitter < 0.0) {
    throw std::invalid_argument("config: jitter must be >= 0");
  }
  if (scenarios.empty()) {
    throw std::invalid_argument("config: scenario list is empty");
  }
}

GenConfig RunConfig::gen_config() const {
  GenConfig gen;
  gen.space = space;
  gen.obs = {window.future, stride};
  gen.skip = window.skip;
  gen.env = env;
  gen.jitter = jitter;
  return gen;
}

InputSpec RunConfig::input_spec() const {
  InputSpec input;
  input.window = window;
  input.space = space;
  input.mask = {true, true};
  input.obs_dim = obs_dim(gen_config().obs);
  input.stride = stride;
  return input;
}

DatasetSpec RunConfig::dataset_spec() const {
  DatasetSpec spec;
  spec.scenarios = scenarios;
  spec.n_per = n_per;
  spec.seed = data_seed;
  spec.space = space;
  spec.env = env;
  spec.stride = stride;
  spec.jitter = jitter;
  return spec;
}

RolloutConfig RunConfig::rollout_config() const {
  RolloutConfig rc;
  rc.selector = selector;
  rc.stoch.sigma = sigma;
  rc.stoch.regions = hazards;
  rc.env = env;
  rc.obs = gen_config().obs;
  rc.r_fi = r_fi;
  rc.dtw_aligned_auc = dtw_aligned;
  return rc;
}

EvalConfig RunConfig::eval_config(int jobs) const {
  EvalConfig ec;
  ec.rollout = rollout_config();
  ec.n_seeds = n_seeds;
  ec.base_seed = base_seed;
  ec.jobs = jobs;
  return ec;
}

std::string scalar_str(Scalar v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// [paths] is deliberately absent: where outputs land must not change the
// recorded identity of a run.
std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "env.buttons=" << cfg.space.buttons << '\n';
  out << "env.sticks=" << cfg.space.sticks << '\n';
  out << "env.vmax=" << scalar_str(cfg.env.vmax) << '\n';
  out << "env.damping=" << scalar_str(cfg.env.damping) << '\n';
  out << "env.gain=" << scalar_str(cfg.env.gain) << '\n';
  out << "env.arena=" << scalar_str(cfg.env.arena) << '\n';
  out << "env.sigma=" << scalar_str(cfg.sigma) << '\n';
  out << "env.hazards=";
  for (const auto& h : cfg.hazards) {
    out << scalar_str(h.cx) << ':' << scalar_str(h.cy) << ':' << scalar_str(h.radius) << ':'
        << scalar_str(h.bias_x) << ':' << scalar_str(h.bias_y) << ';';
  }
  out << '\n';
  out << "window.past=" << cfg.window.past << '\n';
  out << "window.future=" << cfg.window.future << '\n';
  out << "window.stride=" << cfg.stride << '\n';
  out << "train.epochs=" << cfg.train.epochs << '\n';
  out << "train.updates_per_epoch=" << cfg.train.updates_per_epoch << '\n';
  out << "train.batch_size=" << cfg.train.batch_size << '\n';
  out << "train.learning_rate=" << scalar_str(cfg.train.learning_rate) << '\n';
  out << "train.optimizer=" << (cfg.train.optimizer == Optimizer::kAdam ? "adam" : "sgd") << '\n';
  out << "train.seed=" << cfg.train.seed << '\n';
  out << "selector.strategy=" << strategy_name(cfg.selector.strategy) << '\n';
  out << "selector.K=" << cfg.selector.skip << '\n';
  out << "selector.r=" << scalar_str(cfg.selector.radius) << '\n';
  out << "selector.r_in=" << scalar_str(cfg.selector.inner) << '\n';
  out << "selector.r_out=" << scalar_str(cfg.selector.outer) << '\n';
  out << "eval.seeds=" << cfg.n_seeds << '\n';
  out << "eval.base_seed=" << cfg.base_seed << '\n';
  out << "eval.r_fi=" << scalar_str(cfg.r_fi) << '\n';
  out << "eval.dtw_aligned=" << (cfg.dtw_aligned ? "true" : "false") << '\n';
  out << "data.scenarios=";
  for (const auto id : cfg.scenarios) {
    out << scenario_name(id) << ',';
  }
  out << '\n';
  out << "data.n_per_scenario=" << cfg.n_per << '\n';
  out << "data.seed=" << cfg.data_seed << '\n';
  out << "data.jitter=" << scalar_str(cfg.jitter) << '\n';
  return out.str();
}

std::string config_hash(const RunConfig& cfg) {
  const std::string canon = canonical_config(cfg);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  static const char* hex = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = hex[h & 0xF];
    h >>= 4;
  }
  buf[16] = '\0';
  return std::string(buf);
}

}  // namespace idmk
