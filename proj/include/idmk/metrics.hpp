#pragma once

#include <span>
#include <utility>
#include <vector>

#include "idmk/types.hpp"

namespace idmk {

// Classic dynamic-time-warping distance: Euclidean point cost, step set
// {match, insert, delete}, no band constraint. Throws on empty input.
Scalar dtw_distance(std::span<const Position> a, std::span<const Position> b);

// Fraction of timesteps where the rollout is strictly within r of the
// same-index reference point. Sequences must have equal length.
Scalar coverage_rate(std::span<const Position> rollout, std::span<const Position> ref, Scalar r);

struct AucResult {
  Scalar auc = 0.0;
  Scalar max_radius = 0.0;  // R: how far the reference strays from its start
  bool degenerate = false;  // reference never leaves its start point
};

// Mean of the coverage rate over radii in [0, R], computed in closed form
// from the per-timestep distances: auc = mean_t max(0, 1 - d_t / R).
// R is taken from the reference alone. When R = 0 the ratio is undefined;
// the result is flagged and scored 1 if every distance is 0, else 0.
// Requires equal lengths and at least 2 reference points.
AucResult coverage_auc(std::span<const Position> rollout, std::span<const Position> ref);

// Same score, but distances come from the cheapest DTW alignment instead
// of same-index pairing: d_t = min cost among pairs matching rollout step t.
AucResult coverage_auc_dtw_aligned(std::span<const Position> rollout,
                                   std::span<const Position> ref);

// Sampled coverage curve (r, f(r)) over [0, R]; for plots and the
// quadrature cross-check in tests.
std::vector<std::pair<Scalar, Scalar>> coverage_curve(std::span<const Position> rollout,
                                                      std::span<const Position> ref,
                                                      int samples);

// Median with the even-count convention mean-of-middle-two. Throws on
// empty input.
Scalar median(std::vector<Scalar> values);

// Radius-gated progress monitor: a pointer that starts at init_idx
// (min(K, T-1) when run alongside a rollout) and advances by at most one
// per step while the agent is within r_fi of the pointed-at reference
// point. Returns the final index. Runs alongside any strategy as the
// progress ground truth, so the resulting FI floor is init_idx / (T-1).
int run_progress_monitor(std::span<const Position> agent, const Trajectory& ref, Scalar r_fi,
                         int init_idx = 0);

// Final monitor index normalized by the last reference index. Expert
// replay scores exactly 1. A single-step reference is trivially complete.
Scalar future_index_ratio(int final_idx, int ref_len);

}  // namespace idmk
