#include "idmk/types.hpp"

#include <cmath>

#include "idmk/codec.hpp"

namespace idmk {

bool operator==(const Action& a, const Action& b) {
  return a.buttons == b.buttons && a.sticks == b.sticks;
}

std::vector<Position> positions_of(const Trajectory& tr) {
  std::vector<Position> out;
  out.reserve(tr.steps.size());
  for (const auto& s : tr.steps) {
    out.push_back(s.pos);
  }
  return out;
}

namespace {

bool finite(const Position& p) {
  return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
}

}  // namespace

std::vector<std::string> validate_trajectory(const Trajectory& tr) {
  std::vector<std::string> out;
  if (tr.steps.empty()) {
    out.push_back("trajectory is empty");
    return out;
  }
  const std::size_t obs_dim = tr.steps.front().obs.size();
  const std::size_t n_buttons = tr.steps.front().action.buttons.size();
  const std::size_t n_sticks = tr.steps.front().action.sticks.size();
  for (std::size_t i = 0; i < tr.steps.size(); ++i) {
    const auto& s = tr.steps[i];
    const std::string at = "step " + std::to_string(i) + ": ";
    if (s.t != static_cast<int>(i)) {
      out.push_back(at + "timestamp " + std::to_string(s.t) + ", expected " + std::to_string(i));
    }
    if (!finite(s.pos)) {
      out.push_back(at + "non-finite position");
    }
    if (s.obs.size() != obs_dim) {
      out.push_back(at + "obs dimension " + std::to_string(s.obs.size()) + ", expected " +
                    std::to_string(obs_dim));
    }
    for (const Scalar v : s.obs) {
      if (!std::isfinite(v)) {
        out.push_back(at + "non-finite obs value");
        break;
      }
    }
    if (s.action.buttons.size() != n_buttons || s.action.sticks.size() != n_sticks) {
      out.push_back(at + "action shape differs from step 0");
    }
    for (const auto b : s.action.buttons) {
      if (b > 1) {
        out.push_back(at + "button flag outside {0,1}");
        break;
      }
    }
    for (const int bin : s.action.sticks) {
      if (bin < 0 || bin >= kStickBins) {
        out.push_back(at + "stick bin " + std::to_string(bin) + " outside [0, " +
                      std::to_string(kStickBins - 1) + "]");
        break;
      }
    }
  }
  return out;
}

}  // namespace idmk
