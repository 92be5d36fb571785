#include "idmk/codec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace idmk {

int discretize_stick(Scalar v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("discretize_stick: non-finite stick value");
  }
  const Scalar c = std::clamp(v, -1.0, 1.0);
  const int bin = static_cast<int>(std::floor((c + 1.0) * kStickBins / 2.0));
  return std::min(bin, kStickBins - 1);
}

Scalar dequantize_stick(int bin) {
  if (bin < 0 || bin >= kStickBins) {
    throw std::invalid_argument("dequantize_stick: bin out of range");
  }
  // Algebraically -1 + (bin + 0.5) * 2/11, arranged so bin 5 gives exactly
  // 0.0 and mirrored bins give exact negations.
  return (2.0 * bin - (kStickBins - 1)) / kStickBins;
}

std::vector<Scalar> encode_action(const Action& a) {
  std::vector<Scalar> out;
  out.reserve(a.buttons.size() + a.sticks.size());
  for (const auto b : a.buttons) {
    out.push_back(b ? 1.0 : 0.0);
  }
  for (const int s : a.sticks) {
    out.push_back(dequantize_stick(s));
  }
  return out;
}

Action decode_action(std::span<const Scalar> v, const ActionSpace& space) {
  const std::size_t want = static_cast<std::size_t>(space.buttons + space.sticks);
  if (v.size() != want) {
    throw std::invalid_argument("decode_action: encoded width does not match space");
  }
  Action a;
  a.buttons.reserve(static_cast<std::size_t>(space.buttons));
  a.sticks.reserve(static_cast<std::size_t>(space.sticks));
  for (int i = 0; i < space.buttons; ++i) {
    a.buttons.push_back(v[static_cast<std::size_t>(i)] > 0.5 ? 1 : 0);
  }
  for (int i = 0; i < space.sticks; ++i) {
    a.sticks.push_back(discretize_stick(v[static_cast<std::size_t>(space.buttons + i)]));
  }
  return a;
}

Action neutral_action(const ActionSpace& space) {
  Action a;
  a.buttons.assign(static_cast<std::size_t>(space.buttons), 0);
  a.sticks.assign(static_cast<std::size_t>(space.sticks), kStickBins / 2);
  return a;
}

}  // namespace idmk
