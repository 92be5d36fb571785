#include "idmk/selector.hpp"

#include <algorithm>
#include <stdexcept>

namespace idmk {

const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kStatic: return "static";
    case Strategy::kClosest: return "closest";
    case Strategy::kRadius: return "radius";
    case Strategy::kInnerOuter: return "inner_outer";
  }
  throw std::invalid_argument("strategy_name: bad value");
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "static") return Strategy::kStatic;
  if (name == "closest") return Strategy::kClosest;
  if (name == "radius") return Strategy::kRadius;
  if (name == "inner_outer") return Strategy::kInnerOuter;
  throw std::invalid_argument("unknown strategy: \"" + name + "\"");
}

void SelectorParams::validate() const {
  if (skip < 0) {
    throw std::invalid_argument("selector: skip must be >= 0");
  }
  if (strategy == Strategy::kRadius && !(radius > 0.0)) {
    throw std::invalid_argument("selector: radius must be > 0");
  }
  if (strategy == Strategy::kInnerOuter) {
    if (inner < 0.0 || !(outer > 0.0)) {
      throw std::invalid_argument("selector: need inner >= 0 and outer > 0");
    }
    if (inner > outer) {
      throw std::invalid_argument("selector: inner must not exceed outer");
    }
  }
}

namespace {

int clamp_index(int idx, int ref_len) { return std::min(idx, ref_len - 1); }

void require_nonempty(const Trajectory& ref, const char* who) {
  if (ref.steps.empty()) {
    throw std::invalid_argument(std::string(who) + ": empty reference");
  }
}

}  // namespace

int static_select(int t, int skip, int ref_len) {
  if (t < 0 || skip < 0 || ref_len <= 0) {
    throw std::invalid_argument("static_select: need t >= 0, skip >= 0, ref_len > 0");
  }
  return clamp_index(t + skip, ref_len);
}

int closest_select(const Trajectory& ref, const Position& pos, int skip) {
  require_nonempty(ref, "closest_select");
  int best = 0;
  Scalar best_d = distance(ref.pos_at(0), pos);
  for (int i = 1; i < ref.length(); ++i) {
    const Scalar d = distance(ref.pos_at(i), pos);
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return clamp_index(best + skip, ref.length());
}

int radius_update(int fut, const Trajectory& ref, const Position& pos, Scalar r) {
  require_nonempty(ref, "radius_update");
  if (fut < 0 || fut >= ref.length()) {
    throw std::invalid_argument("radius_update: fut out of range");
  }
  if (distance(ref.pos_at(fut), pos) <= r) {
    return clamp_index(fut + 1, ref.length());
  }
  return fut;
}

int inner_outer_update(int fut, const Trajectory& ref, const Position& pos, Scalar inner,
                       Scalar outer) {
  require_nonempty(ref, "inner_outer_update");
  if (fut < 0 || fut >= ref.length()) {
    throw std::invalid_argument("inner_outer_update: fut out of range");
  }
  const int last = ref.length() - 1;
  const Scalar d = distance(ref.pos_at(fut), pos);
  if (d < inner) {
    while (fut < last && distance(ref.pos_at(fut), pos) < inner) {
      ++fut;
    }
    return fut;
  }
  if (d <= outer) {
    return clamp_index(fut + 1, ref.length());
  }
  return fut;
}

RolloutSelector::RolloutSelector(SelectorParams params, const Trajectory& ref)
    : params_(params), ref_(&ref) {
  params_.validate();
  require_nonempty(ref, "RolloutSelector");
  if (params_.strategy == Strategy::kRadius || params_.strategy == Strategy::kInnerOuter) {
    fut_ = clamp_index(params_.skip, ref.length());
  }
}

int RolloutSelector::select(int t, const Position& pos) {
  switch (params_.strategy) {
    case Strategy::kStatic:
      fut_ = static_select(t, params_.skip, ref_->length());
      break;
    case Strategy::kClosest:
      fut_ = closest_select(*ref_, pos, params_.skip);
      break;
    case Strategy::kRadius:
    case Strategy::kInnerOuter:
      break;
  }
  const int chosen = fut_;
  const Scalar d = distance(ref_->pos_at(chosen), pos);
  trace_.push_back({t, pos, chosen, d});
  if (params_.strategy == Strategy::kRadius) {
    fut_ = radius_update(fut_, *ref_, pos, params_.radius);
  } else if (params_.strategy == Strategy::kInnerOuter) {
    fut_ = inner_outer_update(fut_, *ref_, pos, params_.inner, params_.outer);
  }
  return chosen;
}

}  // namespace idmk
