#include "idmk/checkpoint.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace idmk {

using nlohmann::json;

namespace {
constexpr int kCheckpointVersion = 1;
}

void save_checkpoint(const std::filesystem::path& path, const IdmModel& model) {
  json j;
  j["version"] = kCheckpointVersion;
  j["window"] = {{"past", model.input.window.past},
                 {"future", model.input.window.future},
                 {"skip", model.input.window.skip}};
  j["space"] = {{"buttons", model.input.space.buttons}, {"sticks", model.input.space.sticks}};
  j["mask"] = {{"use_obs", model.input.mask.use_obs},
               {"use_actions", model.input.mask.use_actions}};
  j["obs_dim"] = model.input.obs_dim;
  j["stride"] = model.input.stride;
  j["shape"] = {{"encoder_layers", model.shape.encoder_layers},
                {"head_layers", model.shape.head_layers},
                {"hidden", model.shape.hidden}};
  json layers = json::array();
  for (const auto& l : model.net.layers) {
    layers.push_back({{"in", l.in}, {"out", l.out}, {"w", l.w}, {"b", l.b}});
  }
  j["layers"] = layers;

  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open checkpoint for write: " + path.string());
  }
  out << j.dump() << '\n';
}

IdmModel load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open checkpoint: " + path.string());
  }
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) {
    throw std::runtime_error("checkpoint is not valid JSON: " + path.string());
  }
  try {
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw std::runtime_error("unsupported checkpoint version");
    }
    IdmModel m;
    m.input.window.past = j.at("window").at("past").get<int>();
    m.input.window.future = j.at("window").at("future").get<int>();
    m.input.window.skip = j.at("window").at("skip").get<int>();
    m.input.space.buttons = j.at("space").at("buttons").get<int>();
    m.input.space.sticks = j.at("space").at("sticks").get<int>();
    m.input.mask.use_obs = j.at("mask").at("use_obs").get<bool>();
    m.input.mask.use_actions = j.at("mask").at("use_actions").get<bool>();
    m.input.obs_dim = j.at("obs_dim").get<int>();
    m.input.stride = j.at("stride").get<int>();
    m.shape.encoder_layers = j.at("shape").at("encoder_layers").get<int>();
    m.shape.head_layers = j.at("shape").at("head_layers").get<int>();
    m.shape.hidden = j.at("shape").at("hidden").get<int>();
    for (const auto& lj : j.at("layers")) {
      Layer l;
      l.in = lj.at("in").get<int>();
      l.out = lj.at("out").get<int>();
      l.w = lj.at("w").get<std::vector<Scalar>>();
      l.b = lj.at("b").get<std::vector<Scalar>>();
      if (l.w.size() != static_cast<std::size_t>(l.in) * static_cast<std::size_t>(l.out) ||
          l.b.size() != static_cast<std::size_t>(l.out)) {
        throw std::runtime_error("layer size fields disagree with stored weights");
      }
      m.net.layers.push_back(std::move(l));
    }
    if (m.net.layers.empty()) {
      throw std::runtime_error("checkpoint has no layers");
    }
    if (m.net.input_width() != m.input.input_width() ||
        m.net.output_width() != m.output_width()) {
      throw std::runtime_error("layer widths do not chain to the declared spec");
    }
    for (std::size_t i = 1; i < m.net.layers.size(); ++i) {
      if (m.net.layers[i].in != m.net.layers[i - 1].out) {
        throw std::runtime_error("layer widths do not chain");
      }
    }
    return m;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed checkpoint " + path.string() + ": " + e.what());
  }
}

}  // namespace idmk
