// Copyright 2026 The bplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bplab/training.hpp"
#include "bplab/entanglement.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using bplab::CircuitLayout;
using bplab::CostFunction;
using bplab::ParamVector;

TEST_CASE("AMSGrad with a zero gradient on a fresh state does not move") {
  auto state = bplab::AMSGradState::fresh({}, 3);
  ParamVector p(3);
  p << 0.1, 0.2, 0.3;
  const ParamVector before = p;
  bplab::amsgrad_step(state, p, Eigen::VectorXd::Zero(3));
  CHECK(p == before);
  CHECK(state.step == 1);
}

TEST_CASE("AMSGrad single step matches the hand-evaluated update") {
  auto state = bplab::AMSGradState::fresh({0.01, 0.9, 0.999, 1e-8}, 1);
  ParamVector p = ParamVector::Constant(1, 1.0);
  bplab::amsgrad_step(state, p, Eigen::VectorXd::Constant(1, 0.5));
  // m = 0.05, v = v_hat = 0.00025.
  const double expected = -0.01 * 0.05 / (std::sqrt(0.00025) + 1e-8);
  CHECK(p(0) - 1.0 == doctest::Approx(expected).epsilon(1e-14));
  CHECK(expected == doctest::Approx(-0.0316227766).epsilon(1e-6));
  CHECK(state.m(0) == doctest::Approx(0.05));
  CHECK(state.v(0) == doctest::Approx(0.00025));
}

TEST_CASE("AMSGrad keeps v_hat non-decreasing and rejects non-finite gradients") {
  std::mt19937_64 rng(50);
  std::normal_distribution<double> g;
  auto state = bplab::AMSGradState::fresh({}, 4);
  ParamVector p = ParamVector::Zero(4);
  Eigen::VectorXd last = state.v_hat;
  for (int step = 0; step < 100; ++step) {
    Eigen::VectorXd grad(4);
    for (int i = 0; i < 4; ++i) grad(i) = g(rng) * (step % 10 == 0 ? 10.0 : 0.1);
    bplab::amsgrad_step(state, p, grad);
    CHECK((state.v_hat.array() >= last.array()).all());
    CHECK((state.v_hat.array() >= state.v.array()).all());
    last = state.v_hat;
  }
  Eigen::VectorXd bad = Eigen::VectorXd::Zero(4);
  bad(2) = std::nan("");
  CHECK_THROWS_AS(bplab::amsgrad_step(state, p, bad), bplab::NumericError);
  CHECK_THROWS_AS(bplab::amsgrad_step(state, p, Eigen::VectorXd::Zero(3)), bplab::ArgumentError);
}

TEST_CASE("AMSGrad with a constant gradient moves monotonically against it") {
  auto state = bplab::AMSGradState::fresh({}, 2);
  ParamVector p = ParamVector::Zero(2);
  Eigen::VectorXd grad(2);
  grad << 0.3, -2.0;
  ParamVector prev = p;
  for (int step = 0; step < 50; ++step) {
    bplab::amsgrad_step(state, p, grad);
    CHECK(p(0) < prev(0));
    CHECK(p(1) > prev(1));
    prev = p;
  }
}

namespace {

/// Two qubits, one gate: every angle is entangling. Angle 0 is an R34
/// rotation, which acts trivially on |00>.
const CircuitLayout kTwo({2, 0, 1}, 1);
const CostFunction kZ1 = CostFunction::raw(bplab::parse_observable("Z1"));

}  // namespace

TEST_CASE("regularized gradient reduces to the plain gradient at lambda = 0") {
  std::mt19937_64 rng(51);
  const CircuitLayout layout({5, 0, 2}, 6);
  const CostFunction cost = CostFunction::raw(bplab::parse_observable("Z1 Z2"));
  const ParamVector p = oracle::random_angles(layout.num_params(), rng);
  const auto r = bplab::regularized_gradient(layout, p, cost, {});
  CHECK(r.gradient == bplab::grad_cost(cost, layout, p));
  CHECK(r.penalty == 0.0);
}

TEST_CASE("regularized gradient on a single entangling angle") {
  ParamVector p = ParamVector::Zero(6);
  p(0) = M_PI / 2;
  bplab::RegularizationConfig cfg;
  cfg.lambda0 = 1.0;
  auto r = bplab::regularized_gradient(kTwo, p, kZ1, cfg);
  REQUIRE(r.loss == doctest::Approx(1.0));
  CHECK(std::abs(r.gradient(0)) < 1e-15);
  CHECK(r.penalty == doctest::Approx(1.0));

  p(0) = M_PI / 4;
  r = bplab::regularized_gradient(kTwo, p, kZ1, cfg);
  CHECK(r.gradient(0) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
}

TEST_CASE("regularized gradient matches the closed form and scales components uniformly") {
  std::mt19937_64 rng(52);
  const CircuitLayout layout({5, 1, 2}, 4);
  const CostFunction cost = CostFunction::raw(bplab::parse_observable("Z2 X3"));
  const ParamVector p = oracle::random_angles(layout.num_params(), rng);
  bplab::RegularizationConfig cfg;
  cfg.lambda0 = 0.3;
  const auto r = bplab::regularized_gradient(layout, p, cost, cfg);
  const auto base = bplab::grad_cost(cost, layout, p);
  const double loss = bplab::cost_value(cost, layout, p);
  double sum_sin = 0.0;
  for (auto i : layout.entangling_indices()) sum_sin += std::abs(std::sin(p(i)));
  const double factor = 1.0 + 0.3 * sum_sin;
  Eigen::VectorXd expected = factor * base;
  for (auto i : layout.entangling_indices()) {
    const double s = std::sin(p(i));
    expected(i) += 0.3 * std::cos(p(i)) * (s > 0 ? 1.0 : (s < 0 ? -1.0 : 0.0)) * loss;
  }
  CHECK((r.gradient - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(r.penalty == doctest::Approx(0.3 * sum_sin * loss));
  std::set<Eigen::Index> ent(layout.entangling_indices().begin(),
                             layout.entangling_indices().end());
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (!ent.count(i) && std::abs(base(i)) > 1e-6) {
      CHECK(r.gradient(i) / base(i) == doctest::Approx(factor).epsilon(1e-10));
    }
  }
}

TEST_CASE("adaptive lambda relaxes with the loss") {
  bplab::RegularizationConfig cfg{0.2, bplab::RegularizationSchedule::Adaptive, 0.0, 0.8};
  CHECK(bplab::effective_lambda(cfg, 0.8) == doctest::Approx(0.2));
  CHECK(bplab::effective_lambda(cfg, 1.6) == doctest::Approx(0.2));
  CHECK(bplab::effective_lambda(cfg, 0.4) == doctest::Approx(0.1));
  CHECK(bplab::effective_lambda(cfg, 0.0) == 0.0);
  cfg.adaptive_floor = 0.25;
  CHECK(bplab::effective_lambda(cfg, 0.0) == doctest::Approx(0.05));
  cfg.schedule = bplab::RegularizationSchedule::Constant;
  CHECK(bplab::effective_lambda(cfg, 0.0) == 0.2);
  CHECK_THROWS_AS(bplab::regularized_gradient(kTwo, ParamVector::Zero(6), kZ1,
                                              {-1.0, bplab::RegularizationSchedule::Constant}),
                  bplab::ConfigurationError);
}

TEST_CASE("Langevin gradient reduces to the plain gradient at lambda = 0") {
  std::mt19937_64 rng(53);
  const CircuitLayout layout({4, 0, 2}, 5);
  const CostFunction cost = CostFunction::absolute(bplab::parse_observable("Z1 Z2"));
  const ParamVector p = oracle::random_angles(layout.num_params(), rng);
  const auto cfg = bplab::make_langevin_config(layout, 0.0, 7, 3);
  CHECK(bplab::langevin_gradient(layout, p, cost, cfg) == bplab::grad_cost(cost, layout, p));
}

TEST_CASE("Langevin gradient on a single subset angle at pi") {
  ParamVector p = ParamVector::Zero(6);
  p(0) = M_PI;
  const bplab::LangevinConfig cfg{0.05, {0}};
  const auto g = bplab::langevin_gradient_with_loss(kTwo, p, kZ1, cfg);
  REQUIRE(g.loss == doctest::Approx(1.0));
  CHECK(g.gradient(0) == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("Langevin gradient matches the closed form with wrapped angles") {
  std::mt19937_64 rng(54);
  const CircuitLayout layout({4, 0, 2}, 4);
  const CostFunction cost = CostFunction::raw(bplab::parse_observable("Z1 Z2"));
  ParamVector p = oracle::random_angles(layout.num_params(), rng);
  p(5) = -1.0;   // wraps to 2 pi - 1
  p(8) = 7.5;    // wraps to 7.5 - 2 pi
  const bplab::LangevinConfig cfg{0.04, {5, 8, 11}};
  const auto g = bplab::langevin_gradient(layout, p, cost, cfg);
  const auto base = bplab::grad_cost(cost, layout, p);
  const double loss = bplab::cost_value(cost, layout, p);
  const double phi5 = 2 * M_PI - 1.0;
  const double phi8 = 7.5 - 2 * M_PI;
  const double phi11 = p(11);
  const double factor = 1.0 + 0.04 * (phi5 + phi8 + phi11);
  Eigen::VectorXd expected = factor * base;
  for (int i : {5, 8, 11}) expected(i) += 0.04 * loss;
  CHECK((g - expected).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(bplab::wrap_angle(-1.0) == doctest::Approx(phi5));
  CHECK(bplab::wrap_angle(2 * M_PI) == 0.0);
}

TEST_CASE("Langevin subsets: default size, distinct indices, reproducible") {
  const CircuitLayout layout({7, 0, 3}, 100);
  CHECK(bplab::default_langevin_size(layout) ==
        static_cast<std::size_t>(layout.num_params() / 10));
  CHECK(bplab::default_langevin_size(kTwo) == 1);
  const auto a = bplab::make_langevin_config(layout, 0.02, 12, 4);
  const auto b = bplab::make_langevin_config(layout, 0.02, 12, 4);
  const auto c = bplab::make_langevin_config(layout, 0.02, 12, 5);
  CHECK(a.subset == b.subset);
  CHECK(a.subset != c.subset);
  CHECK(std::set<Eigen::Index>(a.subset.begin(), a.subset.end()).size() == 12);
  CHECK_THROWS_AS(bplab::make_langevin_config(kTwo, 0.02, 7, 1), bplab::ConfigurationError);
}

TEST_CASE("regularization and Langevin noise do not reduce the gradient variance") {
  const CircuitLayout layout({4, 0, 2}, 10);
  const CostFunction cost = CostFunction::raw(bplab::parse_observable("Z1 Z2"));
  const Eigen::Index idx = layout.entangling_indices().front();
  const auto lang = bplab::make_langevin_config(layout, 0.02, 12, 1);
  bplab::RegularizationConfig reg;
  reg.lambda0 = 0.1;
  std::vector<double> plain(1500), regd(1500), noisy(1500);
  for (std::size_t s = 0; s < plain.size(); ++s) {
    const auto p = bplab::sample_params(layout, bplab::InitScheme::random(), 60, s);
    plain[s] = bplab::grad_cost(cost, layout, p)(idx);
    regd[s] = bplab::regularized_gradient(layout, p, cost, reg).gradient(idx);
    noisy[s] = bplab::langevin_gradient(layout, p, cost, lang)(idx);
  }
  const auto vp = bplab::summarize_variance(plain);
  for (const auto* other : {&regd, &noisy}) {
    const auto vo = bplab::summarize_variance(*other);
    CHECK(vo.variance >= vp.variance - 2.58 * std::hypot(vo.variance_stderr, vp.variance_stderr));
  }
}

TEST_CASE("training stops at epoch 0 when the start is already optimal") {
  bplab::TrainConfig cfg;
  cfg.epochs = 50;
  const CircuitLayout layout({3, 0, 3}, 4);
  const ParamVector zero = ParamVector::Zero(layout.num_params());
  const auto stationary =
      bplab::train(layout, zero, CostFunction::raw(bplab::parse_observable("Z1")), cfg);
  CHECK(stationary.epochs.size() == 1);
  CHECK(stationary.stop_reason == "stationary");
  cfg.target_loss = 1.0;
  const auto target =
      bplab::train(layout, zero, CostFunction::raw(bplab::parse_observable("Z1 Z2")), cfg);
  CHECK(target.epochs.size() == 1);
  CHECK(target.stop_reason == "target");
}

TEST_CASE("training logs contiguous epochs with entropy and mixing") {
  std::mt19937_64 rng(55);
  const CircuitLayout layout({4, 0, 2}, 4);
  const ParamVector p = oracle::random_angles(layout.num_params(), rng);
  bplab::TrainConfig cfg;
  cfg.epochs = 20;
  const CostFunction cost = CostFunction::raw(bplab::parse_observable("Z1 Z2"));
  const auto report = bplab::train(layout, p, cost, cfg);
  REQUIRE(report.epochs.size() == 21);
  for (std::size_t e = 0; e < report.epochs.size(); ++e) {
    CHECK(report.epochs[e].epoch == static_cast<int>(e));
  }
  const auto& first = report.epochs.front();
  CHECK(first.loss == doctest::Approx(bplab::cost_value(cost, layout, p)).epsilon(1e-12));
  CHECK(first.entropy ==
        doctest::Approx(bplab::bipartite_entropy(
                            bplab::apply_circuit(layout, p, bplab::zero_state(4)),
                            bplab::default_partition(layout.register_spec())))
            .epsilon(1e-12));
  CHECK(first.mixing == doctest::Approx(bplab::mixing_metric(p, layout.entangling_indices())));
  CHECK(report.stop_reason == "epochs");
  CHECK(report.final_loss() < first.loss);
  CHECK(report.first_epoch_at_or_below(first.loss) == 0);
  CHECK(!report.first_epoch_at_or_below(-5.0).has_value());
}

TEST_CASE("three-qubit ZZZ eigenstate is learned from random starts") {
  const CircuitLayout layout({3, 0, 3}, 8);
  const CostFunction cost = CostFunction::raw(bplab::parse_observable("Z1 Z2 Z3"));
  bplab::TrainConfig cfg;
  cfg.epochs = 2000;
  int reached = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = bplab::init_params(layout, bplab::InitScheme::random(), 500 + seed);
    if (bplab::train(layout, p, cost, cfg).final_loss() < -0.99) ++reached;
  }
  CHECK(reached >= 4);
}

TEST_CASE("pre-training minimizes collective entanglement") {
  const CircuitLayout layout({3, 0, 2}, 6);
  std::mt19937_64 rng(56);
  const ParamVector p = oracle::random_angles(layout.num_params(), rng);
  CHECK(bplab::pretraining_objective(layout, p) == bplab::collective_entropy(layout, p));
  const double output_s = bplab::bipartite_entropy(
      bplab::apply_circuit(layout, p, bplab::zero_state(3)),
      bplab::default_partition(layout.register_spec()));
  CHECK(bplab::pretraining_objective(layout, p) != doctest::Approx(output_s));

  bplab::PretrainConfig cfg;
  cfg.steps = 400;
  const auto result = bplab::pretrain_minimize_sc(layout, p, cfg);
  REQUIRE(result.trace.size() <= 401);
  REQUIRE(result.trace.size() >= 50);
  if (result.trace.size() < 401) CHECK(result.trace.back().collective_entropy <= cfg.converged);
  const double initial = result.trace.front().collective_entropy;
  CHECK(result.trace.back().collective_entropy <= initial);
  CHECK(bplab::collective_entropy(layout, result.params) <= result.trace.back().collective_entropy);

  // Moving average over 50 steps is non-increasing.
  std::vector<double> smooth;
  for (std::size_t i = 0; i + 50 <= result.trace.size(); ++i) {
    double s = 0.0;
    for (std::size_t k = i; k < i + 50; ++k) s += result.trace[k].collective_entropy;
    smooth.push_back(s / 50.0);
  }
  for (std::size_t i = 1; i < smooth.size(); ++i) CHECK(smooth[i] <= smooth[i - 1] + 1e-9);
}

TEST_CASE("pre-training from a partitioned start stays partitioned") {
  const CircuitLayout layout({3, 0, 2}, 6);
  const auto p = bplab::init_params(layout, bplab::InitScheme::partitioned(), 8);
  bplab::PretrainConfig cfg;
  cfg.steps = 100;
  const auto result = bplab::pretrain_minimize_sc(layout, p, cfg);
  CHECK(result.trace.size() == 1);
  CHECK(result.trace.front().collective_entropy < 1e-6);
  CHECK(result.params == p);
  CHECK_THROWS_AS(bplab::pretrain_minimize_sc(CircuitLayout({8, 0, 2}, 2),
                                              ParamVector::Zero(CircuitLayout({8, 0, 2}, 2)
                                                                    .num_params()),
                                              cfg),
                  bplab::ConfigurationError);
}

TEST_CASE("perturbed variance: zero width, probe schedule, thread independence") {
  const CircuitLayout layout({3, 0, 2}, 6);
  const CostFunction cost = CostFunction::raw(bplab::parse_observable("Z1 Z2"));
  const auto p = bplab::init_params(layout, bplab::InitScheme::random(), 2);
  CHECK(bplab::perturbed_variance(layout, p, cost, 3, 50, 0.0, 1).variance < 1e-28);
  const auto a = bplab::perturbed_variance(layout, p, cost, 3, 101, 0.3, 1, 1);
  const auto b = bplab::perturbed_variance(layout, p, cost, 3, 101, 0.3, 1, 3);
  CHECK(a.variance == b.variance);
  CHECK(a.variance > 0.0);

  bplab::PretrainConfig cfg;
  cfg.steps = 10;
  cfg.probe = bplab::VarianceProbe{cost, 3, 20, 0.1, 4, 4};
  const auto result = bplab::pretrain_minimize_sc(layout, p, cfg);
  for (const auto& s : result.trace) {
    const bool due = s.step == 0 || s.step == 10 || s.step % 4 == 0;
    CHECK(std::isnan(s.variance) == !due);
  }
}

TEST_CASE("gradient mode names") {
  for (const std::string s : {"plain", "regularized", "langevin"}) {
    CHECK(bplab::to_string(bplab::parse_gradient_mode(s)) == s);
  }
  CHECK_THROWS_AS(bplab::parse_gradient_mode("adam"), bplab::ConfigurationError);
}
