#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "idmk/rng.hpp"
#include "idmk/scenarios.hpp"
#include "idmk/train.hpp"

using namespace idmk;

namespace {

InputSpec data_spec(int past, int future) {
  InputSpec spec;
  spec.window = {past, future, 10};
  spec.obs_dim = 24;  // matches the generator's ten look-ahead entries
  return spec;
}

IdmModel jittered_model(const InputSpec& spec, const ModelShape& shape, std::uint64_t seed) {
  IdmModel model = make_idm_model(spec, shape, seed);
  auto params = flatten_params(model.net);
  Rng rng(derive_seed(seed, 17));
  for (auto& p : params) {
    p += uniform_in(rng, -0.1, 0.1);
  }
  unflatten_params(model.net, params);
  return model;
}

std::vector<Trajectory> small_dataset(std::uint64_t seed) {
  const GenConfig gen;
  const std::vector<ScenarioId> scenarios = {ScenarioId::kCrossroadsLeft};
  return generate_dataset(scenarios, 3, seed, gen);
}

// The same uniform draws train() makes when it fills a batch.
std::vector<BatchSample> replicate_first_batch(const std::vector<Trajectory>& dataset,
                                               const IdmModel& model, const TrainConfig& cfg) {
  Rng sampler(cfg.seed);
  std::vector<BatchSample> batch(static_cast<std::size_t>(cfg.batch_size));
  for (auto& s : batch) {
    const auto& tr = dataset[uniform_index(sampler, dataset.size())];
    const int t =
        static_cast<int>(uniform_index(sampler, static_cast<std::uint64_t>(tr.length())));
    s.past = &tr;
    s.future = &tr;
    s.t = t;
    s.fut_idx = std::min(t + model.input.window.skip, tr.length() - 1);
  }
  return batch;
}

}  // namespace

TEST_CASE("train config validation") {
  TrainConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.epochs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.updates_per_epoch = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.batch_size = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = TrainConfig{};
  cfg.jobs = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("serial and parallel batch gradients are bit-identical") {
  const auto dataset = small_dataset(21);
  const IdmModel model = jittered_model(data_spec(4, 4), ModelShape{2, 2, 16}, 5);
  TrainConfig cfg;
  cfg.batch_size = 32;
  cfg.seed = 9;
  const auto batch = replicate_first_batch(dataset, model, cfg);

  std::vector<Scalar> g_serial(model.net.param_count(), 0.0);
  const auto l_serial = batch_gradients_serial(model, batch, g_serial);

  for (const int jobs : {1, 2, 4}) {
    std::vector<Scalar> g_par(model.net.param_count(), 0.0);
    const auto l_par = batch_gradients_parallel(model, batch, g_par, jobs);
    CHECK(g_par == g_serial);
    CHECK(l_par.total == l_serial.total);
    CHECK(l_par.button_loss == l_serial.button_loss);
    CHECK(l_par.sticks_loss == l_serial.sticks_loss);
    CHECK(l_par.button_error == l_serial.button_error);
    CHECK(l_par.sticks_error == l_serial.sticks_error);
  }
}

TEST_CASE("batch gradient validation") {
  const auto dataset = small_dataset(21);
  const IdmModel model = jittered_model(data_spec(4, 4), ModelShape{2, 2, 16}, 5);
  std::vector<Scalar> grad(model.net.param_count(), 0.0);
  const std::vector<BatchSample> empty;
  CHECK_THROWS_AS(batch_gradients_serial(model, empty, grad), std::invalid_argument);
  std::vector<Scalar> wrong(grad.size() - 1, 0.0);
  const std::vector<BatchSample> batch = {{&dataset[0], &dataset[0], 0, 10}};
  CHECK_THROWS_AS(batch_gradients_serial(model, batch, wrong), std::invalid_argument);
  CHECK_THROWS_AS(batch_gradients_parallel(model, batch, grad, 0), std::invalid_argument);
}

TEST_CASE("a fresh model starts at the uniform-logits loss") {
  const auto dataset = small_dataset(22);
  const IdmModel model = make_idm_model(data_spec(4, 4), ModelShape{2, 2, 16}, 5);
  TrainConfig cfg;
  cfg.batch_size = 16;
  cfg.seed = 3;
  const auto batch = replicate_first_batch(dataset, model, cfg);
  std::vector<Scalar> grad(model.net.param_count(), 0.0);
  const auto loss = batch_gradients_serial(model, batch, grad);
  CHECK(loss.button_loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK(loss.sticks_loss == doctest::Approx(std::log(11.0)).epsilon(1e-12));
}

TEST_CASE("one sgd update applies the mean gradient") {
  const auto dataset = small_dataset(23);
  IdmModel model = jittered_model(data_spec(4, 4), ModelShape{2, 2, 16}, 7);
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.updates_per_epoch = 1;
  cfg.batch_size = 8;
  cfg.learning_rate = 0.01;
  cfg.optimizer = Optimizer::kSgd;
  cfg.seed = 11;

  const auto batch = replicate_first_batch(dataset, model, cfg);
  std::vector<Scalar> grad(model.net.param_count(), 0.0);
  batch_gradients_serial(model, batch, grad);
  auto want = flatten_params(model.net);
  for (std::size_t i = 0; i < want.size(); ++i) {
    want[i] -= cfg.learning_rate * grad[i];
  }

  train(model, dataset, cfg);
  CHECK(flatten_params(model.net) == want);
}

TEST_CASE("one adam update matches the bias-corrected formula") {
  const auto dataset = small_dataset(24);
  IdmModel model = jittered_model(data_spec(4, 4), ModelShape{2, 2, 16}, 8);
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.updates_per_epoch = 1;
  cfg.batch_size = 8;
  cfg.learning_rate = 0.003;
  cfg.seed = 12;

  const auto batch = replicate_first_batch(dataset, model, cfg);
  std::vector<Scalar> grad(model.net.param_count(), 0.0);
  batch_gradients_serial(model, batch, grad);
  auto want = flatten_params(model.net);
  const Scalar bias1 = 1.0 - std::pow(cfg.adam_beta1, 1.0);
  const Scalar bias2 = 1.0 - std::pow(cfg.adam_beta2, 1.0);
  for (std::size_t i = 0; i < want.size(); ++i) {
    const Scalar m1 = (1.0 - cfg.adam_beta1) * grad[i];
    const Scalar m2 = (1.0 - cfg.adam_beta2) * grad[i] * grad[i];
    want[i] -= cfg.learning_rate * (m1 / bias1) / (std::sqrt(m2 / bias2) + cfg.adam_eps);
  }

  train(model, dataset, cfg);
  CHECK(flatten_params(model.net) == want);
}

TEST_CASE("training is bit-reproducible for any jobs value") {
  const auto dataset = small_dataset(25);
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.updates_per_epoch = 4;
  cfg.batch_size = 8;
  cfg.seed = 13;

  std::vector<std::vector<Scalar>> runs;
  std::vector<std::vector<Scalar>> totals;
  for (const int jobs : {1, 1, 3}) {
    IdmModel model = make_idm_model(data_spec(4, 4), ModelShape{2, 2, 16}, 9);
    cfg.jobs = jobs;
    const auto result = train(model, dataset, cfg);
    runs.push_back(flatten_params(model.net));
    std::vector<Scalar> t;
    for (const auto& e : result.epochs) {
      t.push_back(e.total);
    }
    totals.push_back(t);
  }
  CHECK(runs[0] == runs[1]);
  CHECK(runs[0] == runs[2]);
  CHECK(totals[0] == totals[1]);
  CHECK(totals[0] == totals[2]);
}

TEST_CASE("training reduces the loss on one scenario branch") {
  const auto dataset = small_dataset(26);
  IdmModel model = make_idm_model(data_spec(10, 10), ModelShape{2, 2, 64}, 10);
  TrainConfig cfg;
  cfg.epochs = 4;
  cfg.updates_per_epoch = 80;
  cfg.batch_size = 32;
  cfg.learning_rate = 1e-3;
  cfg.seed = 14;

  const auto result = train(model, dataset, cfg);
  REQUIRE(result.epochs.size() == 4);
  const auto& first = result.epochs.front();
  const auto& last = result.epochs.back();
  CHECK(last.total < first.total);
  // A fresh model starts at log 2 + log 11, about 3.09.
  CHECK(last.total < 0.6);
  CHECK(last.sticks_error < 0.2);
  CHECK(last.total == doctest::Approx(last.button_loss + last.sticks_loss).epsilon(1e-9));
}

TEST_CASE("train validates dataset and model agreement") {
  const auto dataset = small_dataset(27);
  TrainConfig cfg;
  cfg.epochs = 1;
  cfg.updates_per_epoch = 1;
  cfg.batch_size = 2;

  IdmModel model = make_idm_model(data_spec(4, 4), ModelShape{2, 2, 16}, 11);
  const std::vector<Trajectory> none;
  CHECK_THROWS_AS(train(model, none, cfg), std::invalid_argument);

  std::vector<Trajectory> with_empty = dataset;
  with_empty.push_back(Trajectory{});
  CHECK_THROWS_AS(train(model, with_empty, cfg), std::invalid_argument);

  std::vector<Trajectory> stub = dataset;
  stub.back().steps.resize(3);  // shorter than the past window
  CHECK_THROWS_AS(train(model, stub, cfg), std::invalid_argument);

  IdmModel wrong_dim = make_idm_model(data_spec(4, 4), ModelShape{2, 2, 16}, 11);
  wrong_dim.input.obs_dim = 6;
  CHECK_THROWS_AS(train(wrong_dim, dataset, cfg), std::invalid_argument);

  TrainConfig bad = cfg;
  bad.epochs = 0;
  CHECK_THROWS_AS(train(model, dataset, bad), std::invalid_argument);
}
