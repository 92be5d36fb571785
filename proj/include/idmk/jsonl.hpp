#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "idmk/types.hpp"

namespace idmk {

// Trajectory files are JSON Lines: one header object
//   {"scenario": ..., "seed": ..., "obs_dim": ..., "buttons": ..., "sticks": ...}
// followed by one object per step
//   {"t": ..., "pos": [x,y,z], "obs": [...], "buttons": [...], "sticks": [...]}.
// Doubles round-trip exactly (shortest-representation serialization).

void write_trajectory(std::ostream& out, const Trajectory& tr);
void write_trajectory_file(const std::filesystem::path& path, const Trajectory& tr);

// Throws std::runtime_error on malformed lines, header/step mismatches,
// or a missing file.
Trajectory read_trajectory(std::istream& in);
Trajectory read_trajectory_file(const std::filesystem::path& path);

}  // namespace idmk
