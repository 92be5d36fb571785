#include "idmk/metrics.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace idmk {

Scalar dtw_distance(std::span<const Position> a, std::span<const Position> b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("dtw_distance: empty sequence");
  }
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  // Rolling rows of the (n+1) x (m+1) accumulated-cost table.
  std::vector<Scalar> prev(m + 1, inf);
  std::vector<Scalar> curr(m + 1, inf);
  prev[0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    curr[0] = inf;
    for (std::size_t j = 1; j <= m; ++j) {
      const Scalar cost = distance(a[i - 1], b[j - 1]);
      curr[j] = cost + std::min({prev[j - 1], prev[j], curr[j - 1]});
    }
    std::swap(prev, curr);
  }
  return prev[m];
}

namespace {

std::vector<Scalar> pointwise_distances(std::span<const Position> rollout,
                                        std::span<const Position> ref) {
  if (rollout.size() != ref.size()) {
    throw std::invalid_argument("pointwise metric: length mismatch");
  }
  if (rollout.empty()) {
    throw std::invalid_argument("pointwise metric: empty sequences");
  }
  std::vector<Scalar> d(rollout.size());
  for (std::size_t t = 0; t < rollout.size(); ++t) {
    d[t] = distance(rollout[t], ref[t]);
  }
  return d;
}

Scalar reference_spread(std::span<const Position> ref) {
  Scalar r_max = 0.0;
  for (std::size_t t = 1; t < ref.size(); ++t) {
    r_max = std::max(r_max, distance(ref[0], ref[t]));
  }
  return r_max;
}

AucResult auc_from_distances(const std::vector<Scalar>& d, Scalar r_max) {
  AucResult res;
  res.max_radius = r_max;
  if (r_max == 0.0) {
    res.degenerate = true;
    res.auc = std::all_of(d.begin(), d.end(), [](Scalar v) { return v == 0.0; }) ? 1.0 : 0.0;
    return res;
  }
  Scalar acc = 0.0;
  for (const Scalar v : d) {
    acc += std::max(0.0, 1.0 - v / r_max);
  }
  res.auc = acc / static_cast<Scalar>(d.size());
  return res;
}

}  // namespace

Scalar coverage_rate(std::span<const Position> rollout, std::span<const Position> ref, Scalar r) {
  if (r < 0.0) {
    throw std::invalid_argument("coverage_rate: negative radius");
  }
  const auto d = pointwise_distances(rollout, ref);
  std::size_t inside = 0;
  for (const Scalar v : d) {
    if (v < r) {
      ++inside;
    }
  }
  return static_cast<Scalar>(inside) / static_cast<Scalar>(d.size());
}

AucResult coverage_auc(std::span<const Position> rollout, std::span<const Position> ref) {
  if (ref.size() < 2) {
    throw std::invalid_argument("coverage_auc: need at least 2 reference points");
  }
  return auc_from_distances(pointwise_distances(rollout, ref), reference_spread(ref));
}

AucResult coverage_auc_dtw_aligned(std::span<const Position> rollout,
                                   std::span<const Position> ref) {
  if (ref.size() < 2) {
    throw std::invalid_argument("coverage_auc_dtw_aligned: need at least 2 reference points");
  }
  if (rollout.empty()) {
    throw std::invalid_argument("coverage_auc_dtw_aligned: empty rollout");
  }
  const std::size_t n = ref.size();
  const std::size_t m = rollout.size();
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();

  // Full accumulated-cost table, then backtrack the optimal path.
  std::vector<std::vector<Scalar>> acc(n + 1, std::vector<Scalar>(m + 1, inf));
  acc[0][0] = 0.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const Scalar cost = distance(ref[i - 1], rollout[j - 1]);
      acc[i][j] = cost + std::min({acc[i - 1][j - 1], acc[i - 1][j], acc[i][j - 1]});
    }
  }

  std::vector<Scalar> d(m, inf);
  std::size_t i = n;
  std::size_t j = m;
  while (i >= 1 && j >= 1) {
    d[j - 1] = std::min(d[j - 1], distance(ref[i - 1], rollout[j - 1]));
    const Scalar diag = (i > 1 && j > 1) ? acc[i - 1][j - 1] : inf;
    const Scalar up = i > 1 ? acc[i - 1][j] : inf;
    const Scalar left = j > 1 ? acc[i][j - 1] : inf;
    if (i == 1 && j == 1) {
      break;
    }
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
  }
  return auc_from_distances(d, reference_spread(ref));
}

std::vector<std::pair<Scalar, Scalar>> coverage_curve(std::span<const Position> rollout,
                                                      std::span<const Position> ref,
                                                      int samples) {
  if (samples < 2) {
    throw std::invalid_argument("coverage_curve: need at least 2 samples");
  }
  const Scalar r_max = reference_spread(ref);
  std::vector<std::pair<Scalar, Scalar>> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    const Scalar r = r_max * static_cast<Scalar>(k) / static_cast<Scalar>(samples - 1);
    out.emplace_back(r, coverage_rate(rollout, ref, r));
  }
  return out;
}

Scalar median(std::vector<Scalar> values) {
  if (values.empty()) {
    throw std::invalid_argument("median: empty input");
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) {
    return values[n / 2];
  }
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

int run_progress_monitor(std::span<const Position> agent, const Trajectory& ref, Scalar r_fi,
                         int init_idx) {
  if (ref.steps.empty()) {
    throw std::invalid_argument("run_progress_monitor: empty reference");
  }
  if (!(r_fi > 0.0)) {
    throw std::invalid_argument("run_progress_monitor: r_fi must be > 0");
  }
  if (init_idx < 0 || init_idx >= ref.length()) {
    throw std::invalid_argument("run_progress_monitor: init_idx outside reference");
  }
  const int last = ref.length() - 1;
  int idx = init_idx;
  for (const Position& pos : agent) {
    if (idx < last && distance(ref.pos_at(idx), pos) <= r_fi) {
      ++idx;
    }
  }
  return idx;
}

Scalar future_index_ratio(int final_idx, int ref_len) {
  if (ref_len <= 0 || final_idx < 0 || final_idx >= ref_len) {
    throw std::invalid_argument("future_index_ratio: index outside reference");
  }
  if (ref_len == 1) {
    return 1.0;
  }
  return static_cast<Scalar>(final_idx) / static_cast<Scalar>(ref_len - 1);
}

}  // namespace idmk
