#pragma once

#include <span>
#include <vector>

#include "idmk/types.hpp"

namespace idmk {

// Stick axes are quantized to 11 bins over [-1, 1]; bin 5 is exact center.
inline constexpr int kStickBins = 11;

// Clamps v to [-1, 1], then maps to a bin index in [0, 10].
// Throws std::invalid_argument on non-finite input.
int discretize_stick(Scalar v);

// Center of a bin: bin 0 -> -10/11, bin 5 -> 0, bin 10 -> 10/11.
// Throws std::invalid_argument for bins outside [0, 10].
Scalar dequantize_stick(int bin);

// Flattens an action to buttons-as-0/1 followed by stick bin centers.
// Width = buttons + sticks.
std::vector<Scalar> encode_action(const Action& a);

// Inverse of encode_action for a known space: buttons by > 0.5 threshold,
// sticks by re-discretizing the encoded center.
Action decode_action(std::span<const Scalar> v, const ActionSpace& space);

// All-false buttons, all-center sticks. Encodes to a zero vector.
Action neutral_action(const ActionSpace& space);

}  // namespace idmk
