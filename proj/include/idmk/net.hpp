#pragma once

#include <span>
#include <vector>

#include "idmk/rng.hpp"
#include "idmk/types.hpp"

namespace idmk {

// Dense layer, weights row-major [out x in].
struct Layer {
  int in = 0;
  int out = 0;
  std::vector<Scalar> w;
  std::vector<Scalar> b;
};

// Plain fully-connected stack: ReLU after every layer except the last,
// which stays linear (logits). Double precision throughout.
struct MlpNet {
  std::vector<Layer> layers;

  int input_width() const { return layers.empty() ? 0 : layers.front().in; }
  int output_width() const { return layers.empty() ? 0 : layers.back().out; }
  std::size_t param_count() const;
};

// Builds [in -> hidden x (depth-1) -> out]. Hidden layers get scaled
// uniform init from the seed; the last layer starts at zero so initial
// logits are uniform.
MlpNet make_mlp(int in, int hidden, int out, int depth, std::uint64_t seed);

// Activations stored by forward for the matching backward call.
// post[0] is the input, post[i] the output of layer i-1 (ReLU applied on
// all but the last).
struct ForwardTrace {
  std::vector<std::vector<Scalar>> post;
};

std::vector<Scalar> forward(const MlpNet& net, std::span<const Scalar> x, ForwardTrace* trace);

// Accumulates parameter gradients (flat layout: per layer, weights then
// biases) and returns nothing; grad must have param_count() entries.
// dlogits is the loss gradient at the network output.
void backward(const MlpNet& net, const ForwardTrace& trace, std::span<const Scalar> dlogits,
              std::span<Scalar> grad);

// Flat parameter access, same layout as the gradient vector.
std::vector<Scalar> flatten_params(const MlpNet& net);
void unflatten_params(MlpNet& net, std::span<const Scalar> flat);

// Sums slot vectors in a fixed binary-tree order, independent of how the
// slots were filled; keeps reductions bit-identical across thread counts.
// Consumes the slots (they are overwritten with partial sums).
void reduce_pairwise(std::vector<std::vector<Scalar>>& slots, std::span<Scalar> out);

}  // namespace idmk
