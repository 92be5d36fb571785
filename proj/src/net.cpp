#include "idmk/net.hpp"

#include <cmath>
#include <stdexcept>

namespace idmk {

std::size_t MlpNet::param_count() const {
  std::size_t n = 0;
  for (const auto& l : layers) {
    n += l.w.size() + l.b.size();
  }
  return n;
}

MlpNet make_mlp(int in, int hidden, int out, int depth, std::uint64_t seed) {
  if (in <= 0 || hidden <= 0 || out <= 0 || depth < 1) {
    throw std::invalid_argument("make_mlp: widths and depth must be positive");
  }
  MlpNet net;
  Rng rng(seed);
  int prev = in;
  for (int i = 0; i < depth; ++i) {
    const bool last = i == depth - 1;
    Layer l;
    l.in = prev;
    l.out = last ? out : hidden;
    l.w.assign(static_cast<std::size_t>(l.in) * static_cast<std::size_t>(l.out), 0.0);
    l.b.assign(static_cast<std::size_t>(l.out), 0.0);
    if (!last) {
      const Scalar bound = std::sqrt(6.0 / static_cast<Scalar>(l.in + l.out));
      for (auto& w : l.w) {
        w = uniform_in(rng, -bound, bound);
      }
    }
    prev = l.out;
    net.layers.push_back(std::move(l));
  }
  return net;
}

std::vector<Scalar> forward(const MlpNet& net, std::span<const Scalar> x, ForwardTrace* trace) {
  if (net.layers.empty()) {
    throw std::invalid_argument("forward: empty network");
  }
  if (static_cast<int>(x.size()) != net.input_width()) {
    throw std::invalid_argument("forward: input width mismatch");
  }
  std::vector<Scalar> act(x.begin(), x.end());
  if (trace != nullptr) {
    trace->post.clear();
    trace->post.push_back(act);
  }
  for (std::size_t li = 0; li < net.layers.size(); ++li) {
    const Layer& l = net.layers[li];
    const bool last = li + 1 == net.layers.size();
    std::vector<Scalar> next(static_cast<std::size_t>(l.out));
    for (int o = 0; o < l.out; ++o) {
      Scalar acc = l.b[static_cast<std::size_t>(o)];
      const Scalar* row = l.w.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(l.in);
      for (int i = 0; i < l.in; ++i) {
        acc += row[i] * act[static_cast<std::size_t>(i)];
      }
      next[static_cast<std::size_t>(o)] = (!last && acc < 0.0) ? 0.0 : acc;
    }
    act = std::move(next);
    if (trace != nullptr) {
      trace->post.push_back(act);
    }
  }
  return act;
}

void backward(const MlpNet& net, const ForwardTrace& trace, std::span<const Scalar> dlogits,
              std::span<Scalar> grad) {
  if (trace.post.size() != net.layers.size() + 1) {
    throw std::invalid_argument("backward: trace does not match network");
  }
  if (grad.size() != net.param_count()) {
    throw std::invalid_argument("backward: gradient buffer size mismatch");
  }
  if (static_cast<int>(dlogits.size()) != net.output_width()) {
    throw std::invalid_argument("backward: dlogits width mismatch");
  }

  // Per-layer flat offsets, laid out front to back.
  std::vector<std::size_t> offset(net.layers.size());
  std::size_t off = 0;
  for (std::size_t li = 0; li < net.layers.size(); ++li) {
    offset[li] = off;
    off += net.layers[li].w.size() + net.layers[li].b.size();
  }

  std::vector<Scalar> delta(dlogits.begin(), dlogits.end());
  for (std::size_t li = net.layers.size(); li-- > 0;) {
    const Layer& l = net.layers[li];
    const bool last = li + 1 == net.layers.size();
    const auto& input = trace.post[li];
    const auto& output = trace.post[li + 1];

    // ReLU gate: a zero post-activation means the unit did not fire and
    // passes no gradient.
    if (!last) {
      for (int o = 0; o < l.out; ++o) {
        if (output[static_cast<std::size_t>(o)] == 0.0) {
          delta[static_cast<std::size_t>(o)] = 0.0;
        }
      }
    }

    Scalar* gw = grad.data() + offset[li];
    Scalar* gb = gw + l.w.size();
    for (int o = 0; o < l.out; ++o) {
      const Scalar d = delta[static_cast<std::size_t>(o)];
      Scalar* grow = gw + static_cast<std::size_t>(o) * static_cast<std::size_t>(l.in);
      for (int i = 0; i < l.in; ++i) {
        grow[i] += d * input[static_cast<std::size_t>(i)];
      }
      gb[o] += d;
    }

    if (li > 0) {
      std::vector<Scalar> prev_delta(static_cast<std::size_t>(l.in), 0.0);
      for (int o = 0; o < l.out; ++o) {
        const Scalar d = delta[static_cast<std::size_t>(o)];
        if (d == 0.0) {
          continue;
        }
        const Scalar* row = l.w.data() + static_cast<std::size_t>(o) * static_cast<std::size_t>(l.in);
        for (int i = 0; i < l.in; ++i) {
          prev_delta[static_cast<std::size_t>(i)] += d * row[i];
        }
      }
      delta = std::move(prev_delta);
    }
  }
}

std::vector<Scalar> flatten_params(const MlpNet& net) {
  std::vector<Scalar> flat;
  flat.reserve(net.param_count());
  for (const auto& l : net.layers) {
    flat.insert(flat.end(), l.w.begin(), l.w.end());
    flat.insert(flat.end(), l.b.begin(), l.b.end());
  }
  return flat;
}

void unflatten_params(MlpNet& net, std::span<const Scalar> flat) {
  if (flat.size() != net.param_count()) {
    throw std::invalid_argument("unflatten_params: size mismatch");
  }
  std::size_t off = 0;
  for (auto& l : net.layers) {
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(off),
              flat.begin() + static_cast<std::ptrdiff_t>(off + l.w.size()), l.w.begin());
    off += l.w.size();
    std::copy(flat.begin() + static_cast<std::ptrdiff_t>(off),
              flat.begin() + static_cast<std::ptrdiff_t>(off + l.b.size()), l.b.begin());
    off += l.b.size();
  }
}

void reduce_pairwise(std::vector<std::vector<Scalar>>& slots, std::span<Scalar> out) {
  if (slots.empty()) {
    throw std::invalid_argument("reduce_pairwise: no slots");
  }
  const std::size_t width = slots.front().size();
  if (out.size() != width) {
    throw std::invalid_argument("reduce_pairwise: output width mismatch");
  }
  for (const auto& s : slots) {
    if (s.size() != width) {
      throw std::invalid_argument("reduce_pairwise: ragged slots");
    }
  }
  const std::size_t n = slots.size();
  for (std::size_t stride = 1; stride < n; stride *= 2) {
    for (std::size_t i = 0; i + stride < n; i += 2 * stride) {
      auto& dst = slots[i];
      const auto& src = slots[i + stride];
      for (std::size_t k = 0; k < width; ++k) {
        dst[k] += src[k];
      }
    }
  }
  std::copy(slots.front().begin(), slots.front().end(), out.begin());
}

}  // namespace idmk
