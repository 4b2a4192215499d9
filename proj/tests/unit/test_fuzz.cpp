#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kframe/fuzz.hpp"
#include "kframe/random.hpp"

using namespace kframe;

TEST(FuzzConfig, Validation) {
  FuzzConfig cfg;
  cfg.count = 0;
  EXPECT_KFRAME_ERROR(fuzz_campaign(cfg), BadConfig);
  cfg.count = 1;
  cfg.theorems = {"no_such_theorem"};
  EXPECT_KFRAME_ERROR(cfg.validate(), BadConfig);
  cfg.theorems.clear();
  cfg.dim_lo = 5;
  cfg.dim_hi = 3;
  EXPECT_KFRAME_ERROR(cfg.validate(), BadConfig);
  cfg.dim_lo = 2;
  cfg.node_lo = 0;
  EXPECT_KFRAME_ERROR(cfg.validate(), BadConfig);
}

TEST(Fuzz, ComposeRightSeed42AllCertified) {
  FuzzConfig cfg;
  cfg.seed = 42;
  cfg.count = 10;
  cfg.theorems = {"compose_right"};
  const CampaignResult c = fuzz_campaign(cfg);
  EXPECT_TRUE(c.ok);
  const auto& t = c.report["theorems"]["compose_right"];
  EXPECT_EQ(t["certified"], 10);
  EXPECT_EQ(t["gate_passed"], 10);
  EXPECT_EQ(t["failed"], 0);
}

TEST(Fuzz, DeterministicReplay) {
  FuzzConfig cfg;
  cfg.seed = 9;
  cfg.count = 8;
  const CampaignResult a = fuzz_campaign(cfg);
  const CampaignResult b = fuzz_campaign(cfg);
  EXPECT_EQ(a.report.dump(), b.report.dump());
  for (const auto& [name, t] : a.report["theorems"].items()) {
    EXPECT_EQ(t["counterexamples"], b.report["theorems"][name]["counterexamples"]);
  }
}

TEST(Fuzz, InstancesDependOnlyOnTheirIndex) {
  FuzzConfig cfg;
  cfg.seed = 3;
  for (const auto& th : fuzz_theorems()) {
    const Scenario later = generate_instance(th, cfg, 5);
    (void)generate_instance(th, cfg, 4);
    EXPECT_EQ(generate_instance(th, cfg, 5), later) << th;
    EXPECT_FALSE(generate_instance(th, cfg, 6) == later) << th;
  }
  FuzzConfig other = cfg;
  other.seed = 4;
  EXPECT_FALSE(generate_instance("bounds", other, 5) == generate_instance("bounds", cfg, 5));
}

TEST(Fuzz, EveryTheoremRunsCleanly) {
  FuzzConfig cfg;
  cfg.seed = 1234;
  cfg.count = 25;
  const CampaignResult c = fuzz_campaign(cfg);
  EXPECT_TRUE(c.ok);
  ASSERT_EQ(c.report["theorems"].size(), fuzz_theorems().size());
  for (const auto& [name, t] : c.report["theorems"].items()) {
    EXPECT_EQ(t["failed"], 0) << name;
    EXPECT_EQ(t["errors"], 0) << name;
    EXPECT_GT(t["gate_passed"].get<int>(), 0) << name;
    EXPECT_TRUE(t["counterexamples"].empty()) << name;
  }
}

TEST(Fuzz, RespectsDimensionAndNodeRanges) {
  FuzzConfig cfg;
  cfg.seed = 5;
  cfg.dim_lo = cfg.dim_hi = 3;
  cfg.node_lo = 2;
  cfg.node_hi = 4;
  for (std::size_t idx = 0; idx < 20; ++idx) {
    const Scenario s = generate_instance("bounds", cfg, idx);
    EXPECT_EQ(s.dim, 3);
    EXPECT_GE(s.space().size(), 2u);
    EXPECT_LE(s.space().size(), 4u);
    ASSERT_EQ(s.checks.size(), 1u);
  }
}

TEST(Fuzz, VariantFlagsAreTalliedAndOnlySomeAsserted) {
  FuzzConfig cfg;
  cfg.seed = 42;
  cfg.count = 30;
  cfg.theorems = {"rank_update", "stability", "stability_min"};
  const CampaignResult c = fuzz_campaign(cfg);
  const auto& th = c.report["theorems"];
  EXPECT_TRUE(th["rank_update"]["variant_flags"].contains("condition_mass_lt_A_over_L_norm"));
  EXPECT_TRUE(th["stability"]["variant_flags"].contains("upper_stated"));
  EXPECT_TRUE(th["stability"]["variant_flags"].contains("upper_chained"));
  EXPECT_TRUE(th["stability_min"]["variant_flags"].contains("upper_literal"));
  EXPECT_FALSE(th["stability_min"]["variant_flags"]["upper_literal"]["asserted"].get<bool>());
  EXPECT_TRUE(th["stability_min"]["variant_flags"]["upper_with_B"]["asserted"].get<bool>());
  EXPECT_TRUE(is_asserted_flag("condition_R_lt_A"));
  EXPECT_FALSE(is_asserted_flag("upper_chained"));
}

TEST(Rng, StreamsAreIndependentAndRepeatable) {
  Rng a(1, 2, 3), b(1, 2, 3), c(1, 2, 4);
  EXPECT_EQ(a.normal(), b.normal());
  EXPECT_NE(Rng(1, 2, 3).normal(), c.normal());
  Rng r(11);
  for (int i = 0; i < 200; ++i) {
    const std::size_t k = r.uniform_int(2, 4);
    EXPECT_GE(k, 2u);
    EXPECT_LE(k, 4u);
  }
  const LinOp M = random_rank(r, 5, 2, true);
  Eigen::JacobiSVD<LinOp> svd(M);
  EXPECT_GT(svd.singularValues()(1), 1e-8);
  EXPECT_LT(svd.singularValues()(2), 1e-10 * svd.singularValues()(0));
}
