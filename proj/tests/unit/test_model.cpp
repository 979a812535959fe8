#include <gtest/gtest.h>

#include <bit>
#include <random>

#include "cprsim/errors.hpp"
#include "cprsim/model.hpp"

using namespace cprsim;

namespace {

ModelParams fig_params(double A = 0.1) {
  ModelParams p;
  p.growth_rate = 2.0;
  p.allee_threshold = A;
  p.coop_extraction = 0.5;
  p.defect_extraction = 1.5;
  p.greed = 1.0;
  return p;
}

std::string rejected_field(const ModelParams& p, bool allow = false) {
  try {
    (void)validate_params(p, allow);
  } catch (const ParamDomainError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(ValidateParams, AcceptsReferenceParameters) {
  const ValidatedParams v = validate_params(fig_params());
  EXPECT_EQ(v.get(), fig_params());
}

TEST(ValidateParams, RejectsEachViolatedConstraint) {
  ModelParams p = fig_params();
  p.allee_threshold = 1.0;
  EXPECT_EQ(rejected_field(p), "A");
  p = fig_params();
  p.allee_threshold = 0.0;
  EXPECT_EQ(rejected_field(p), "A");
  p = fig_params();
  p.coop_extraction = 1.2;
  EXPECT_EQ(rejected_field(p), "e_C_hat");
  p = fig_params();
  p.defect_extraction = 0.9;
  EXPECT_EQ(rejected_field(p), "e_D_hat");
  p = fig_params();
  p.growth_rate = 0.0;
  EXPECT_EQ(rejected_field(p), "T");
  p = fig_params();
  p.greed = 1.5;
  EXPECT_EQ(rejected_field(p), "w");
  p = fig_params();
  p.greed = 0.0;
  EXPECT_EQ(rejected_field(p), "w");
}

TEST(ValidateParams, CarryingCapacityFixedUnlessOverridden) {
  ModelParams p = fig_params();
  p.carrying_capacity = 2.0;
  EXPECT_EQ(rejected_field(p), "K");
  EXPECT_NO_THROW((void)validate_params(p, true));
  p.allee_threshold = 2.5;
  EXPECT_EQ(rejected_field(p, true), "A");
}

TEST(ValidateParams, RejectsNaN) {
  ModelParams p = fig_params();
  p.defect_extraction = std::nan("");
  EXPECT_EQ(rejected_field(p), "e_D_hat");
}

TEST(GrowthRate, RootsAndHandValue) {
  const ModelParams p = fig_params();
  EXPECT_EQ(growth_rate(0.0, p, GrowthKind::PlainLogistic), 0.0);
  EXPECT_EQ(growth_rate(0.0, p, GrowthKind::AlleeLogistic), 0.0);
  EXPECT_EQ(growth_rate(p.allee_threshold, p, GrowthKind::AlleeLogistic), 0.0);
  EXPECT_EQ(growth_rate(1.0, p, GrowthKind::AlleeLogistic), 0.0);

  ModelParams q = fig_params(0.3);
  q.growth_rate = 1.0;
  EXPECT_NEAR(growth_rate(0.2, q, GrowthKind::AlleeLogistic), -0.16 / 3.0, 1e-15);
  EXPECT_NEAR(growth_rate(0.5, p, GrowthKind::PlainLogistic), 0.5, 1e-15);
}

TEST(GrowthRate, AlleeSignPattern) {
  for (double A : {0.05, 0.1, 0.3, 0.6}) {
    const ModelParams p = fig_params(A);
    for (int i = 1; i < 1000; ++i) {
      const double R = i / 1000.0;
      const double g = growth_rate(R, p, GrowthKind::AlleeLogistic);
      if (R < A) EXPECT_LT(g, 0.0) << "A=" << A << " R=" << R;
      if (R > A) EXPECT_GT(g, 0.0) << "A=" << A << " R=" << R;
    }
  }
}

TEST(ResourceDrift, Examples) {
  const ModelParams p = fig_params();
  for (double x : {0.0, 0.3, 1.0}) {
    EXPECT_EQ(resource_drift({0.0, x}, p, GrowthKind::AlleeLogistic), 0.0);
    EXPECT_EQ(resource_drift({0.0, x}, p, GrowthKind::PlainLogistic), 0.0);
  }
  EXPECT_NEAR(resource_drift({0.5, 0.5}, p, GrowthKind::PlainLogistic), -0.5, 1e-15);
  // s_D+ from the closed form, to 17 digits
  EXPECT_NEAR(resource_drift({0.779128784747792, 0.0}, p, GrowthKind::AlleeLogistic), 0.0,
              1e-14);
  EXPECT_NEAR(resource_drift({0.779129, 0.0}, p, GrowthKind::AlleeLogistic), 0.0, 1e-5);
}

TEST(StrategyDrift, Examples) {
  const ModelParams p = fig_params();
  for (double R : {0.0, 0.4, 1.0}) {
    EXPECT_EQ(strategy_drift({R, 0.0}, p, StrategyRule::Replicator), 0.0);
    EXPECT_EQ(strategy_drift({R, 1.0}, p, StrategyRule::Replicator), 0.0);
  }
  EXPECT_DOUBLE_EQ(strategy_drift({0.05, 0.3}, p, StrategyRule::KnowledgeFeedback), 0.7);
  EXPECT_NEAR(strategy_drift({0.55, 0.5}, p, StrategyRule::KnowledgeFeedback), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(strategy_drift({0.5, 0.5}, p, StrategyRule::Replicator), -0.125);
}

TEST(StrategyDrift, ReplicatorNeverIncreasesCooperation) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p = fig_params();
  for (int i = 0; i < 10000; ++i) {
    p.greed = 0.01 + 0.99 * u(gen);
    EXPECT_LE(strategy_drift({u(gen), u(gen)}, p, StrategyRule::Replicator), 0.0);
  }
}

TEST(StrategyDrift, KnowledgeContinuousAtThreshold) {
  const ModelParams p = fig_params();
  for (double x : {0.0, 0.25, 0.9}) {
    const double at = strategy_drift({p.allee_threshold, x}, p, StrategyRule::KnowledgeFeedback);
    const double left = strategy_drift({std::nextafter(p.allee_threshold, 0.0), x}, p,
                                       StrategyRule::KnowledgeFeedback);
    EXPECT_EQ(at, 1.0 - x);
    EXPECT_EQ(left, 1.0 - x);
  }
}

TEST(StrategyDrift, StepBelongsToUpperBranchAtZero) {
  EXPECT_EQ(unit_step(0.0), 1.0);
  EXPECT_EQ(unit_step(-1e-300), 0.0);
  EXPECT_DOUBLE_EQ(knowledge_defection_probability(0.55, fig_params()), 0.5);
  EXPECT_EQ(knowledge_defection_probability(0.05, fig_params()), 0.0);
}

TEST(CoevolutionRhs, FixedPointResiduals) {
  const ModelParams p = fig_params();
  const Rates s0 = coevolution_rhs({0.0, 0.5}, p, GrowthKind::AlleeLogistic, StrategyRule::Replicator);
  EXPECT_EQ(s0.resource, 0.0);
  EXPECT_EQ(s0.coop_fraction, 0.0);

  const Rates sdm = coevolution_rhs({0.320871215252208, 0.0}, p, GrowthKind::AlleeLogistic,
                                    StrategyRule::Replicator);
  EXPECT_LT(sdm.max_norm(), 1e-9);

  const Rates kf = coevolution_rhs({0.8193850847975502, 0.20068323911383311}, p,
                                   GrowthKind::AlleeLogistic, StrategyRule::KnowledgeFeedback);
  EXPECT_LT(kf.max_norm(), 1e-9);
}

TEST(CoevolutionRhs, BitwiseDeterministic) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const System sys{validate_params(fig_params()), GrowthKind::AlleeLogistic,
                   StrategyRule::KnowledgeFeedback};
  for (int i = 0; i < 1000; ++i) {
    const State s{u(gen), u(gen)};
    const Rates a = coevolution_rhs(s, sys);
    const Rates b = coevolution_rhs(s, sys);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.resource), std::bit_cast<std::uint64_t>(b.resource));
    EXPECT_EQ(std::bit_cast<std::uint64_t>(a.coop_fraction),
              std::bit_cast<std::uint64_t>(b.coop_fraction));
  }
}

TEST(CoevolutionRhs, KnowledgeIgnoresGreed) {
  ModelParams a = fig_params();
  ModelParams b = a;
  b.greed = 0.2;
  const State s{0.6, 0.3};
  EXPECT_EQ(strategy_drift(s, a, StrategyRule::KnowledgeFeedback),
            strategy_drift(s, b, StrategyRule::KnowledgeFeedback));
}

TEST(Names, RoundTripStrings) {
  EXPECT_EQ(to_string(GrowthKind::AlleeLogistic), "allee");
  EXPECT_EQ(to_string(GrowthKind::PlainLogistic), "logistic");
  EXPECT_EQ(to_string(StrategyRule::Replicator), "replicator");
  EXPECT_EQ(to_string(StrategyRule::KnowledgeFeedback), "knowledge");
}
