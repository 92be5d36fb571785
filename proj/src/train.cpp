#include "idmk/train.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "idmk/rng.hpp"

namespace idmk {

void TrainConfig::validate() const {
  if (epochs < 1 || updates_per_epoch < 1 || batch_size < 1) {
    throw std::invalid_argument("train: epochs, updates and batch size must be >= 1");
  }
  if (!(learning_rate > 0.0)) {
    throw std::invalid_argument("train: learning rate must be > 0");
  }
  if (jobs < 1) {
    throw std::invalid_argument("train: jobs must be >= 1");
  }
}

namespace {

// Loss fields as a 5-vector so epoch averages can share the pairwise
// reduction used for gradients.
std::vector<Scalar> loss_to_vec(const LossBreakdown& l) {
  return {l.total, l.button_loss, l.sticks_loss, l.button_error, l.sticks_error};
}

LossBreakdown vec_to_loss(std::span<const Scalar> v, Scalar scale) {
  LossBreakdown out;
  out.total = v[0] * scale;
  out.button_loss = v[1] * scale;
  out.sticks_loss = v[2] * scale;
  out.button_error = v[3] * scale;
  out.sticks_error = v[4] * scale;
  return out;
}

void sample_gradient(const IdmModel& model, const BatchSample& s, std::span<Scalar> grad,
                     std::vector<Scalar>& loss_vec) {
  const auto input = build_input(*s.past, *s.future, s.t, s.fut_idx, model.input);
  ForwardTrace trace;
  const auto logits = forward(model.net, input, &trace);
  std::vector<Scalar> dlogits(logits.size());
  const auto& target = s.past->steps[static_cast<std::size_t>(s.t)].action;
  const auto loss = action_loss(logits, target, model.input.space, dlogits);
  backward(model.net, trace, dlogits, grad);
  loss_vec = loss_to_vec(loss);
}

LossBreakdown reduce_batch(const IdmModel& model, std::vector<std::vector<Scalar>>& grad_slots,
                           std::vector<std::vector<Scalar>>& loss_slots,
                           std::span<Scalar> grad) {
  const std::size_t n = grad_slots.size();
  reduce_pairwise(grad_slots, grad);
  const Scalar inv = 1.0 / static_cast<Scalar>(n);
  for (auto& g : grad) {
    g *= inv;
  }
  std::vector<Scalar> loss_sum(5, 0.0);
  reduce_pairwise(loss_slots, loss_sum);
  (void)model;
  return vec_to_loss(loss_sum, inv);
}

}  // namespace

LossBreakdown batch_gradients_serial(const IdmModel& model, std::span<const BatchSample> batch,
                                     std::span<Scalar> grad) {
  if (batch.empty()) {
    throw std::invalid_argument("batch_gradients: empty batch");
  }
  if (grad.size() != model.net.param_count()) {
    throw std::invalid_argument("batch_gradients: gradient buffer size mismatch");
  }
  const std::size_t n = batch.size();
  std::vector<std::vector<Scalar>> grad_slots(n, std::vector<Scalar>(grad.size(), 0.0));
  std::vector<std::vector<Scalar>> loss_slots(n);
  for (std::size_t i = 0; i < n; ++i) {
    sample_gradient(model, batch[i], grad_slots[i], loss_slots[i]);
  }
  return reduce_batch(model, grad_slots, loss_slots, grad);
}

LossBreakdown batch_gradients_parallel(const IdmModel& model, std::span<const BatchSample> batch,
                                       std::span<Scalar> grad, int jobs) {
  if (batch.empty()) {
    throw std::invalid_argument("batch_gradients: empty batch");
  }
  if (grad.size() != model.net.param_count()) {
    throw std::invalid_argument("batch_gradients: gradient buffer size mismatch");
  }
  if (jobs < 1) {
    throw std::invalid_argument("batch_gradients: jobs must be >= 1");
  }
  const std::size_t n = batch.size();
  std::vector<std::vector<Scalar>> grad_slots(n, std::vector<Scalar>(grad.size(), 0.0));
  std::vector<std::vector<Scalar>> loss_slots(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(jobs)
#endif
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(n); ++i) {
    sample_gradient(model, batch[static_cast<std::size_t>(i)],
                    grad_slots[static_cast<std::size_t>(i)],
                    loss_slots[static_cast<std::size_t>(i)]);
  }
  return reduce_batch(model, grad_slots, loss_slots, grad);
}

TrainResult train(IdmModel& model, const std::vector<Trajectory>& dataset,
                  const TrainConfig& cfg) {
  cfg.validate();
  if (dataset.empty()) {
    throw std::invalid_argument("train: empty dataset");
  }
  const int need = std::max(model.input.window.past, model.input.window.future);
  for (const auto& tr : dataset) {
    if (tr.steps.empty()) {
      throw std::invalid_argument("train: dataset contains an empty trajectory");
    }
    if (tr.length() < need) {
      throw std::invalid_argument("train: window longer than shortest trajectory");
    }
    if (static_cast<int>(tr.steps.front().obs.size()) != model.input.obs_dim) {
      throw std::invalid_argument("train: dataset obs dimension does not match model");
    }
  }

  Rng sampler(cfg.seed);
  const std::size_t n_params = model.net.param_count();
  std::vector<Scalar> grad(n_params);
  std::vector<Scalar> params = flatten_params(model.net);
  std::vector<Scalar> m1(n_params, 0.0);
  std::vector<Scalar> m2(n_params, 0.0);
  std::uint64_t step_count = 0;

  TrainResult result;
  result.epochs.reserve(static_cast<std::size_t>(cfg.epochs));

  std::vector<BatchSample> batch(static_cast<std::size_t>(cfg.batch_size));
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<std::vector<Scalar>> epoch_loss_slots(
        static_cast<std::size_t>(cfg.updates_per_epoch));
    for (int update = 0; update < cfg.updates_per_epoch; ++update) {
      for (auto& s : batch) {
        const auto& tr = dataset[uniform_index(sampler, dataset.size())];
        const int t = static_cast<int>(uniform_index(sampler, static_cast<std::uint64_t>(tr.length())));
        s.past = &tr;
        s.future = &tr;
        s.t = t;
        s.fut_idx = std::min(t + model.input.window.skip, tr.length() - 1);
      }
      std::fill(grad.begin(), grad.end(), 0.0);
      const auto loss = batch_gradients_parallel(model, batch, grad, cfg.jobs);
      epoch_loss_slots[static_cast<std::size_t>(update)] = loss_to_vec(loss);

      ++step_count;
      if (cfg.optimizer == Optimizer::kSgd) {
        for (std::size_t i = 0; i < n_params; ++i) {
          params[i] -= cfg.learning_rate * grad[i];
        }
      } else {
        const Scalar b1 = cfg.adam_beta1;
        const Scalar b2 = cfg.adam_beta2;
        const Scalar bias1 = 1.0 - std::pow(b1, static_cast<Scalar>(step_count));
        const Scalar bias2 = 1.0 - std::pow(b2, static_cast<Scalar>(step_count));
        for (std::size_t i = 0; i < n_params; ++i) {
          m1[i] = b1 * m1[i] + (1.0 - b1) * grad[i];
          m2[i] = b2 * m2[i] + (1.0 - b2) * grad[i] * grad[i];
          const Scalar mhat = m1[i] / bias1;
          const Scalar vhat = m2[i] / bias2;
          params[i] -= cfg.learning_rate * mhat / (std::sqrt(vhat) + cfg.adam_eps);
        }
      }
      unflatten_params(model.net, params);
    }
    std::vector<Scalar> sums(5, 0.0);
    reduce_pairwise(epoch_loss_slots, sums);
    result.epochs.push_back(vec_to_loss(sums, 1.0 / static_cast<Scalar>(cfg.updates_per_epoch)));
  }
  return result;
}

namespace {

Scalar batch_loss_only(const IdmModel& model, std::span<const BatchSample> batch) {
  Scalar acc = 0.0;
  for (const auto& s : batch) {
    const auto input = build_input(*s.past, *s.future, s.t, s.fut_idx, model.input);
    const auto logits = forward(model.net, input, nullptr);
    const auto& target = s.past->steps[static_cast<std::size_t>(s.t)].action;
    acc += action_loss(logits, target, model.input.space, {}).total;
  }
  return acc / static_cast<Scalar>(batch.size());
}

}  // namespace

GradCheckReport grad_check(const IdmModel& model, std::span<const BatchSample> batch,
                           int n_probes, Scalar h, Scalar tol, std::uint64_t seed) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("grad_check: h must be > 0");
  }
  if (batch.empty()) {
    throw std::invalid_argument("grad_check: empty batch");
  }
  if (n_probes < 1) {
    throw std::invalid_argument("grad_check: need at least one probe");
  }

  std::vector<Scalar> grad(model.net.param_count(), 0.0);
  batch_gradients_serial(model, batch, grad);

  IdmModel probe = model;
  std::vector<Scalar> params = flatten_params(model.net);
  Rng rng(seed);
  GradCheckReport report;
  report.probes = n_probes;
  for (int p = 0; p < n_probes; ++p) {
    const std::size_t idx = uniform_index(rng, params.size());
    const Scalar saved = params[idx];
    params[idx] = saved + h;
    unflatten_params(probe.net, params);
    const Scalar up = batch_loss_only(probe, batch);
    params[idx] = saved - h;
    unflatten_params(probe.net, params);
    const Scalar down = batch_loss_only(probe, batch);
    params[idx] = saved;
    const Scalar fd = (up - down) / (2.0 * h);
    const Scalar an = grad[idx];
    const Scalar rel = std::abs(an - fd) / std::max({std::abs(an), std::abs(fd), 1e-4});
    report.max_rel_err = std::max(report.max_rel_err, rel);
  }
  unflatten_params(probe.net, params);
  report.pass = report.max_rel_err < tol;
  return report;
}

}  // namespace idmk
