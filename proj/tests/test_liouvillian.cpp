// Copyright 2026 The wqed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <random>

#include <gtest/gtest.h>

#include <wqed/liouvillian.hpp>

#include "oracles.hpp"

namespace wqed {
namespace {

Operator unit(Eigen::Index d, Eigen::Index r, Eigen::Index c) {
  Operator m = Operator::Zero(d, d);
  m(r, c) = 1.0;
  return m;
}

ChainConfig random_chain(std::mt19937_64& rng, int n, bool lossy) {
  std::uniform_real_distribution<double> U(0.0, 1.0);
  ChainConfig cfg;
  for (int j = 0; j < n; ++j) {
    EmitterParams e;
    e.gamma_r = 0.2 + 4.8 * U(rng);
    e.gamma_l = 0.2 + 1.8 * U(rng);
    e.gamma_spont = lossy ? U(rng) : 0.0;
    e.delta = U(rng) - 0.5;
    e.phase = 6.0 * U(rng);
    cfg.emitters.push_back(e);
  }
  cfg.d_ratio = U(rng);
  return cfg;
}

TEST(ChainConfig, Validation) {
  EXPECT_NO_THROW(ChainConfig::uniform(3, {}).validate());
  ChainConfig bad = ChainConfig::uniform(2, {});
  bad.emitters[1].gamma_r = -1.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(ChainConfig{}.validate(), std::invalid_argument);
  const EmitterParams asym{5.0, 1.0};
  EXPECT_DOUBLE_EQ(asym.gamma_rl(), 3.0);
}

TEST(Closed, SpontaneousLossOnExcitedState) {
  EmitterParams p;
  p.gamma_spont = 0.75;
  const auto cfg = ChainConfig::uniform(1, p);
  const Operator out = apply_closed(cfg, unit(2, 1, 1));
  EXPECT_LT((out - (-1.5) * unit(2, 1, 1)).norm(), 1e-15);
}

TEST(Closed, DetuningRotatesCoherence) {
  EmitterParams p;
  p.delta = 0.5;
  const auto cfg = ChainConfig::uniform(1, p);
  // -i (H rho - rho H) on |e><g| gives -i delta |e><g|
  const Operator out = apply_closed(cfg, unit(2, 1, 0));
  EXPECT_LT((out - Complex(0, -0.5) * unit(2, 1, 0)).norm(), 1e-15);
  EXPECT_LT(apply_closed(cfg, unit(2, 0, 0)).norm(), 1e-15);
}

TEST(PureDecay, SingleEmitter) {
  const auto cfg = ChainConfig::uniform(1, EmitterParams{});
  const Operator out = apply_pure_decay(cfg, unit(2, 1, 1));
  EXPECT_LT((out - (-2.0) * (unit(2, 1, 1) - unit(2, 0, 0))).norm(), 1e-15);
  // Coherences decay at half the population rate.
  EXPECT_LT((apply_pure_decay(cfg, unit(2, 0, 1)) + unit(2, 0, 1)).norm(), 1e-15);
}

TEST(Cooperative, CoefficientDirection) {
  EmitterParams p;
  p.gamma_r = 4.0;
  p.gamma_l = 1.0;
  const auto cfg = ChainConfig::uniform(3, p);
  EXPECT_DOUBLE_EQ(cooperative_coefficient(cfg, 2, 1), 4.0);
  EXPECT_DOUBLE_EQ(cooperative_coefficient(cfg, 1, 2), 1.0);
  EXPECT_DOUBLE_EQ(cooperative_coefficient(cfg, 3, 1), 4.0);
  EXPECT_DOUBLE_EQ(cooperative_coefficient(cfg, 1, 3), 1.0);

  p.gamma_l = 0.0;
  const auto right_only = ChainConfig::uniform(3, p);
  EXPECT_EQ(cooperative_coefficient(right_only, 1, 2), 0.0);
  EXPECT_EQ(cooperative_coefficient(right_only, 2, 3), 0.0);
  EXPECT_DOUBLE_EQ(cooperative_coefficient(right_only, 3, 2), 4.0);
}

TEST(Cooperative, HandExpandedTwoEmitterExample) {
  // rho = |e1 g2><e1 g2| with unit symmetric rates and D = 0 couples to the
  // |g1 e2><e1 g2| and |e1 g2><g1 e2| coherences with weight -1.
  const auto cfg = ChainConfig::uniform(2, EmitterParams{});
  const Operator out = apply_cooperative(cfg, unit(4, 2, 2));
  const Operator expected = -(unit(4, 1, 2) + unit(4, 2, 1));
  EXPECT_LT((out - expected).norm(), 1e-15);
}

TEST(Cooperative, MatchesBasisStateExpansion) {
  std::mt19937_64 rng(2024);
  for (int n : {2, 3}) {
    for (int trial = 0; trial < 8; ++trial) {
      const ChainConfig cfg = random_chain(rng, n, false);
      const Operator rho = testing::random_matrix(rng, Eigen::Index{1} << n);
      const Operator ref = testing::cooperative_bruteforce(cfg, rho);
      EXPECT_LT((apply_cooperative(cfg, rho) - ref).norm(), 1e-12) << "N=" << n;
    }
  }
}

TEST(Cooperative, VanishesForOneEmitter) {
  std::mt19937_64 rng(3);
  const auto cfg = ChainConfig::uniform(1, EmitterParams{});
  EXPECT_LT(apply_cooperative(cfg, testing::random_matrix(rng, 2)).norm(), 1e-15);
}

class LiouvillianProperties : public ::testing::TestWithParam<int> {};

TEST_P(LiouvillianProperties, TraceHermiticityLinearity) {
  const int n = GetParam();
  const Eigen::Index d = Eigen::Index{1} << n;
  std::mt19937_64 rng(100 + n);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const ChainConfig cfg = random_chain(rng, n, false);
    const Operator a = testing::random_matrix(rng, d);
    const Operator b = testing::random_matrix(rng, d);
    const Complex x(U(rng), U(rng)), y(U(rng), U(rng));
    const Operator la = apply_total(cfg, a), lb = apply_total(cfg, b);
    const double scale = 1.0 + la.norm() + lb.norm();

    EXPECT_LT(std::abs(trace(la)) / scale, 1e-12);
    EXPECT_LT((apply_total(cfg, a.adjoint()) - la.adjoint()).norm() / scale, 1e-12);
    EXPECT_LT((apply_total(cfg, x * a + y * b) - (x * la + y * lb)).norm() / scale, 1e-12);
  }
}

TEST_P(LiouvillianProperties, SpontaneousLossDrainsTrace) {
  const int n = GetParam();
  const Eigen::Index d = Eigen::Index{1} << n;
  const EmitterRegister reg(n);
  std::mt19937_64 rng(200 + n);
  for (int trial = 0; trial < 10; ++trial) {
    const ChainConfig cfg = random_chain(rng, n, true);
    const Operator rho = testing::random_density(rng, d);
    double expected = 0.0;
    for (int j = 1; j <= n; ++j) {
      expected -= 2.0 * cfg.emitter(j).gamma_spont * trace(number_op(reg, j) * rho).real();
    }
    EXPECT_NEAR(trace(apply_total(cfg, rho)).real(), expected, 1e-12);
  }
}

TEST_P(LiouvillianProperties, CachedSuperoperatorAgrees) {
  const int n = GetParam();
  const Eigen::Index d = Eigen::Index{1} << n;
  std::mt19937_64 rng(300 + n);
  const ChainConfig cfg = random_chain(rng, n, true);
  const Liouvillian lv(cfg);
  EXPECT_EQ(lv.superoperator().rows(), d * d);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator rho = testing::random_matrix(rng, d);
    EXPECT_LT((lv.apply(rho) - apply_total(cfg, rho)).norm(), 1e-12);
  }
}

TEST_P(LiouvillianProperties, GroundStateIsStationary) {
  const int n = GetParam();
  std::mt19937_64 rng(400 + n);
  const ChainConfig cfg = random_chain(rng, n, true);
  const EmitterRegister reg(n);
  EXPECT_LT(apply_total(cfg, ground_projector(reg)).norm(), 1e-14);
}

INSTANTIATE_TEST_SUITE_P(Emitters, LiouvillianProperties, ::testing::Values(1, 2, 3));

TEST(Liouvillian, RejectsMismatchedInput) {
  const auto cfg = ChainConfig::uniform(2, EmitterParams{});
  EXPECT_THROW(apply_total(cfg, Operator::Zero(8, 8)), DimensionError);
  const Liouvillian lv(cfg);
  EXPECT_THROW(lv.apply(Operator::Zero(2, 2)), DimensionError);
}

}  // namespace
}  // namespace wqed
