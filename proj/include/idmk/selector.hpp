#pragma once

#include <string>
#include <vector>

#include "idmk/types.hpp"

namespace idmk {

// How the conditioning index into the reference is advanced during a
// rollout. Static and Closest are stateless; Radius and InnerOuter keep a
// monotone pointer.
enum class Strategy {
  kStatic,
  kClosest,
  kRadius,
  kInnerOuter,
};

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

struct SelectorParams {
  Strategy strategy = Strategy::kRadius;
  int skip = 10;        // K: look-ahead offset, and the pointer's start index
  Scalar radius = 6.0;  // Radius advancement gate
  Scalar inner = 2.0;   // InnerOuter inner radius (may be 0)
  Scalar outer = 8.0;   // InnerOuter outer radius

  // Throws std::invalid_argument on skip < 0, non-positive radii, or
  // inner > outer.
  void validate() const;
};

// Conditioning index = t + K, clamped to the last reference step.
int static_select(int t, int skip, int ref_len);

// Index of the reference point nearest to pos (smallest index on ties),
// plus K, clamped to the last reference step.
int closest_select(const Trajectory& ref, const Position& pos, int skip);

// Advances by one when the agent is within r of the pointed-at reference
// point (boundary inclusive); otherwise holds. Clamped to the last step.
int radius_update(int fut, const Trajectory& ref, const Position& pos, Scalar r);

// Three-case update: strictly inside inner -> advance until the pointed-at
// point is at least inner away (or the last step); between inner and outer
// (boundaries inclusive) -> advance by one; outside outer -> hold.
int inner_outer_update(int fut, const Trajectory& ref, const Position& pos, Scalar inner,
                       Scalar outer);

struct TraceEntry {
  int t = 0;
  Position pos;
  int fut_idx = 0;
  Scalar dist = 0.0;  // distance to the chosen reference point
};

using SelectorTrace = std::vector<TraceEntry>;

// Per-rollout selector: emits the conditioning index for each step and
// records the trace. For the stateful strategies the emitted index is the
// pointer's current value; the advancement rule is applied afterwards
// with the same position, so it takes effect from the next step.
class RolloutSelector {
 public:
  RolloutSelector(SelectorParams params, const Trajectory& ref);

  int select(int t, const Position& pos);

  int current() const { return fut_; }
  const SelectorTrace& trace() const { return trace_; }

 private:
  SelectorParams params_;
  const Trajectory* ref_;
  int fut_ = 0;
  SelectorTrace trace_;
};

}  // namespace idmk
