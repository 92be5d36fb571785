#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace idmk {

using Scalar = double;

// World-frame point. The arena is planar; z is carried for the record
// format and stays 0 throughout.
struct Position {
  Scalar x = 0.0;
  Scalar y = 0.0;
  Scalar z = 0.0;
};

inline Scalar distance(const Position& a, const Position& b) {
  const Scalar dx = a.x - b.x;
  const Scalar dy = a.y - b.y;
  const Scalar dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Controller layout: number of binary buttons and analog stick axes.
struct ActionSpace {
  int buttons = 2;
  int sticks = 2;
};

// One controller sample. buttons are 0/1 flags, sticks are bin indices
// in [0, 10] (11 bins over [-1, 1]).
struct Action {
  std::vector<std::uint8_t> buttons;
  std::vector<int> sticks;
};

bool operator==(const Action& a, const Action& b);

struct TrajectoryStep {
  int t = 0;
  Position pos;
  std::vector<Scalar> obs;
  Action action;
};

struct TrajectoryMeta {
  std::string scenario;
  std::uint64_t seed = 0;
};

// Time-indexed record of one episode: the position where each step was
// taken, the observation seen there, and the action chosen.
struct Trajectory {
  TrajectoryMeta meta;
  std::vector<TrajectoryStep> steps;

  int length() const { return static_cast<int>(steps.size()); }
  const Position& pos_at(int t) const { return steps[static_cast<std::size_t>(t)].pos; }
};

std::vector<Position> positions_of(const Trajectory& tr);

// Structural checks: contiguous timestamps from 0, uniform obs dimension,
// uniform action shape, all values finite, stick bins in range.
// Returns one human-readable line per violation; empty means valid.
std::vector<std::string> validate_trajectory(const Trajectory& tr);

}  // namespace idmk
