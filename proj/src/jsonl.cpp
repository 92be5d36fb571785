#include "idmk/jsonl.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace idmk {

using nlohmann::json;

void write_trajectory(std::ostream& out, const Trajectory& tr) {
  const std::size_t obs_dim = tr.steps.empty() ? 0 : tr.steps.front().obs.size();
  const std::size_t n_buttons = tr.steps.empty() ? 0 : tr.steps.front().action.buttons.size();
  const std::size_t n_sticks = tr.steps.empty() ? 0 : tr.steps.front().action.sticks.size();
  json header = {{"scenario", tr.meta.scenario},
                 {"seed", tr.meta.seed},
                 {"obs_dim", obs_dim},
                 {"buttons", n_buttons},
                 {"sticks", n_sticks}};
  out << header.dump() << '\n';
  for (const auto& s : tr.steps) {
    json row;
    row["t"] = s.t;
    row["pos"] = {s.pos.x, s.pos.y, s.pos.z};
    row["obs"] = s.obs;
    json buttons = json::array();
    for (const auto b : s.action.buttons) {
      buttons.push_back(b != 0);
    }
    row["buttons"] = buttons;
    row["sticks"] = s.action.sticks;
    out << row.dump() << '\n';
  }
}

void write_trajectory_file(const std::filesystem::path& path, const Trajectory& tr) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for write: " + path.string());
  }
  write_trajectory(out, tr);
}

namespace {

json parse_line(const std::string& line, int lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded()) {
    throw std::runtime_error("trajectory line " + std::to_string(lineno) + ": malformed JSON");
  }
  return j;
}

void require_fields(const json& j, std::initializer_list<const char*> keys, int lineno) {
  for (const char* k : keys) {
    if (!j.contains(k)) {
      throw std::runtime_error("trajectory line " + std::to_string(lineno) +
                               ": missing field \"" + k + "\"");
    }
  }
}

}  // namespace

Trajectory read_trajectory(std::istream& in) {
  std::string line;
  int lineno = 1;
  if (!std::getline(in, line)) {
    throw std::runtime_error("trajectory stream is empty");
  }
  const json header = parse_line(line, lineno);
  require_fields(header, {"scenario", "seed", "obs_dim", "buttons", "sticks"}, lineno);

  Trajectory tr;
  tr.meta.scenario = header["scenario"].get<std::string>();
  tr.meta.seed = header["seed"].get<std::uint64_t>();
  const std::size_t obs_dim = header["obs_dim"].get<std::size_t>();
  const std::size_t n_buttons = header["buttons"].get<std::size_t>();
  const std::size_t n_sticks = header["sticks"].get<std::size_t>();

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      continue;
    }
    const json row = parse_line(line, lineno);
    require_fields(row, {"t", "pos", "obs", "buttons", "sticks"}, lineno);
    TrajectoryStep s;
    s.t = row["t"].get<int>();
    const auto& pos = row["pos"];
    if (!pos.is_array() || pos.size() != 3) {
      throw std::runtime_error("trajectory line " + std::to_string(lineno) +
                               ": pos must be a 3-array");
    }
    s.pos = {pos[0].get<Scalar>(), pos[1].get<Scalar>(), pos[2].get<Scalar>()};
    s.obs = row["obs"].get<std::vector<Scalar>>();
    if (s.obs.size() != obs_dim) {
      throw std::runtime_error("trajectory line " + std::to_string(lineno) +
                               ": obs dimension disagrees with header");
    }
    for (const auto& b : row["buttons"]) {
      s.action.buttons.push_back(b.get<bool>() ? 1 : 0);
    }
    s.action.sticks = row["sticks"].get<std::vector<int>>();
    if (s.action.buttons.size() != n_buttons || s.action.sticks.size() != n_sticks) {
      throw std::runtime_error("trajectory line " + std::to_string(lineno) +
                               ": action shape disagrees with header");
    }
    tr.steps.push_back(std::move(s));
  }
  return tr;
}

Trajectory read_trajectory_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open trajectory file: " + path.string());
  }
  try {
    return read_trajectory(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace idmk
