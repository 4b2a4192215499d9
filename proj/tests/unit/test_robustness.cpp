#include <cmath>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "kframe/robustness.hpp"

using namespace kframe;
using fixture::diag;

namespace {

struct Frame {
  OperatorFamily F;
  LinOp K;
  FrameCertificate cert;
};

Frame worked() {
  const OperatorFamily F = fixture::worked_family();
  const LinOp K = fixture::worked_K();
  return {F, K, certify_k_frame(F, K)};
}

Frame random_frame(std::mt19937_64& rng, int trial) {
  const Index n = 2 + trial % 5;
  const OperatorFamily F = fixture::random_family(rng, fixture::random_space(rng, 1 + trial % 9), n);
  const LinOp K = oracle::random_matrix(rng, n);
  return {F, K, certify_k_frame(F, K)};
}

ScalarSequence constant_seq(const MeasureSpace& m, double c) {
  return ScalarSequence(m, std::vector<double>(m.size(), c));
}

OperatorFamily perturb(std::mt19937_64& rng, const OperatorFamily& F, double eps) {
  std::vector<LinOp> ops;
  for (const auto& op : F.ops()) ops.push_back(op + eps * oracle::random_matrix(rng, F.dim()));
  return OperatorFamily(F.space(), ops);
}

void expect_independently_valid(const RobustnessReport& r) {
  ASSERT_TRUE(r.certified);
  const LinOp S = oracle::frame_operator(r.family);
  EXPECT_TRUE(oracle::bounds_hold(S, r.target, r.guaranteed_lower, r.guaranteed_upper, 1e-8));
}

}  // namespace

TEST(DiffFrameOperator, Examples) {
  std::mt19937_64 rng(61);
  const OperatorFamily F = fixture::random_family(rng, fixture::random_space(rng, 4), 3);
  EXPECT_LE(diff_frame_operator(F, F).norm(), 0.0);
  const LinOp S0 = diff_frame_operator(F, OperatorFamily::zero(F.space(), 3));
  EXPECT_LE((S0 - oracle::frame_operator(F)).norm(), 1e-12 * (1.0 + S0.norm()));

  const OperatorFamily G = perturb(rng, F, 0.3);
  const LinOp D = diff_frame_operator(F, G);
  for (int s = 0; s < 100; ++s) {
    const Vector x = oracle::random_unit(rng, 3);
    double direct = 0.0;
    for (std::size_t i = 0; i < F.size(); ++i) direct += F.space().weight(i) * ((F[i] - G[i]) * x).squaredNorm();
    EXPECT_NEAR((x.dot(D * x)).real(), direct, 1e-12 * (1.0 + direct));
  }
  EXPECT_KFRAME_ERROR(diff_frame_operator(F, fixture::worked_family()), SpaceMismatch);
}

TEST(RankUpdate, Examples) {
  const Frame w = worked();
  const LinOp I = LinOp::Identity(2, 2);

  const RobustnessReport zero = perturb_rank_update(w.F, w.K, I, constant_seq(w.F.space(), 0.0), w.cert);
  EXPECT_TRUE(zero.hypothesis_holds);
  EXPECT_NEAR(zero.guaranteed_lower, w.cert.A_opt, 1e-12);
  EXPECT_NEAR(zero.guaranteed_upper, w.cert.B_opt, 1e-15);
  EXPECT_TRUE(zero.certified);

  const RobustnessReport small = perturb_rank_update(w.F, w.K, I, constant_seq(w.F.space(), 0.1), w.cert);
  EXPECT_TRUE(small.hypothesis_holds);
  EXPECT_NEAR(small.values.at("R"), 0.01, 1e-15);
  expect_independently_valid(small);

  const RobustnessReport big = perturb_rank_update(w.F, w.K, I, constant_seq(w.F.space(), 1.2), w.cert);
  EXPECT_FALSE(big.hypothesis_holds);
  EXPECT_FALSE(big.certified);

  EXPECT_KFRAME_ERROR(perturb_rank_update(w.F, w.K, LinOp::Zero(2, 2), constant_seq(w.F.space(), 0.1), w.cert),
                      ZeroOperator);
}

TEST(RankUpdate, ConditionFlagsDifferByNormOfL) {
  // ||L|| = 4, mass = 0.05: R = 0.8 < A = 4/3 but mass < A / ||L|| = 1/3 as well;
  // mass = 0.1 gives R = 1.6 > A while mass < A / ||L|| still holds.
  const Frame w = worked();
  const LinOp L = 4.0 * LinOp::Identity(2, 2);
  const RobustnessReport r = perturb_rank_update(w.F, w.K, L, constant_seq(w.F.space(), std::sqrt(0.1)), w.cert);
  EXPECT_FALSE(r.variant_flags.at("condition_R_lt_A"));
  EXPECT_TRUE(r.variant_flags.at("condition_mass_lt_A_over_L_norm"));
  EXPECT_FALSE(r.hypothesis_holds);
}

TEST(RankUpdate, LowerBoundDecreasesInR) {
  const Frame w = worked();
  const LinOp I = LinOp::Identity(2, 2);
  double previous = std::numeric_limits<double>::infinity();
  for (double c = 0.0; c * c < w.cert.A_opt; c += 0.05) {
    const RobustnessReport r = perturb_rank_update(w.F, w.K, I, constant_seq(w.F.space(), c), w.cert);
    ASSERT_TRUE(r.hypothesis_holds);
    EXPECT_LT(r.guaranteed_lower, previous);
    previous = r.guaranteed_lower;
  }
}

TEST(Relative, Examples) {
  const Frame w = worked();
  const ScalarSequence one = constant_seq(w.F.space(), 1.0);
  const RobustnessReport same = relative_perturbation(w.F, w.F, one, one, 0.0, 0.0, w.K, w.cert);
  EXPECT_TRUE(same.hypothesis_holds);
  EXPECT_NEAR(same.values.at("sandwich_lower"), 0.5, 1e-15);
  EXPECT_NEAR(same.values.at("sandwich_upper"), 2.0, 1e-15);
  EXPECT_TRUE(same.certified);

  const OperatorFamily G = w.F.scaled(1.01);
  const RobustnessReport scaled = relative_perturbation(w.F, G, one, one, 0.01, 0.01, w.K, w.cert);
  EXPECT_TRUE(scaled.hypothesis_holds);
  expect_independently_valid(scaled);

  const ScalarSequence with_zero(w.F.space(), std::vector<double>{0.0, 1.0, 1.0});
  EXPECT_KFRAME_ERROR(relative_perturbation(w.F, G, with_zero, one, 0.1, 0.1, w.K, w.cert), NotConfined);
  EXPECT_KFRAME_ERROR(relative_perturbation(w.F, G, one, one, 0.5, 0.1, w.K, w.cert), BadAlphaBeta);
}

TEST(StabilityAlphaBeta, Examples) {
  const Frame w = worked();
  const RobustnessReport same = stability_alpha_beta(w.F, w.F, w.K, 0.0, 0.0, w.cert);
  EXPECT_TRUE(same.hypothesis_holds);
  EXPECT_NEAR(same.guaranteed_lower, w.cert.A_opt, 1e-12);
  EXPECT_NEAR(same.guaranteed_upper, w.cert.B_opt, 1e-15);

  // Gamma_i = Lambda_i + 0.01 K*, beta from the pencil (S_diff, KK*).
  std::vector<LinOp> ops;
  for (const auto& op : w.F.ops()) ops.push_back(op + 0.01 * w.K.adjoint());
  const OperatorFamily G(w.F.space(), ops);
  const auto beta = fit_stability_beta(w.F, G, w.K);
  ASSERT_TRUE(beta);
  const RobustnessReport r = stability_alpha_beta(w.F, G, w.K, 0.0, *beta, w.cert);
  EXPECT_TRUE(r.hypothesis_holds);
  expect_independently_valid(r);
  EXPECT_TRUE(r.variant_flags.at("upper_safe"));

  EXPECT_KFRAME_ERROR(stability_alpha_beta(w.F, G, w.K, 0.5, 0.5 * w.cert.A_opt, w.cert), BadAlphaBeta);
}

TEST(StabilityBeta, Examples) {
  const Frame w = worked();
  const RobustnessReport r = stability_beta_only(w.F, w.F, w.K, 1e-6, w.cert);
  EXPECT_TRUE(r.certified);
  // beta-only shrinkage: (sqrt(A) - sqrt(beta))^2.
  const double gap = std::sqrt(4.0 / 3) - 1e-3;
  EXPECT_NEAR(r.guaranteed_lower, gap * gap, 1e-12);
  EXPECT_KFRAME_ERROR(stability_beta_only(w.F, w.F, w.K, w.cert.A_opt, w.cert), BadBeta);
  EXPECT_KFRAME_ERROR(stability_beta_only(w.F, w.F, w.K, 0.0, w.cert), BadBeta);
}

TEST(StabilityMin, Examples) {
  const Frame w = worked();
  const RobustnessReport same = stability_min_condition(w.F, w.F, w.K, 0.5, w.cert);
  EXPECT_TRUE(same.hypothesis_holds);
  EXPECT_NEAR(same.guaranteed_lower, w.cert.A_opt / 3.0, 1e-12);
  EXPECT_TRUE(same.certified);

  const OperatorFamily G = w.F.scaled(1.1);
  const auto M = fit_min_condition(w.F, G);
  ASSERT_TRUE(M);
  // S_diff = 0.01 S, S_Gamma = 1.21 S: the binding ratio is 0.01.
  EXPECT_NEAR(*M, 0.01, 1e-12);
  const RobustnessReport r = stability_min_condition(w.F, G, w.K, *M, w.cert);
  EXPECT_TRUE(r.hypothesis_holds);
  expect_independently_valid(r);

  EXPECT_KFRAME_ERROR(stability_min_condition(w.F, G, w.K, 0.0, w.cert), BadM);
}

TEST(StabilityMin, LiteralUpperFailsForLargeB) {
  std::mt19937_64 rng(62);
  const OperatorFamily F = fixture::random_family(rng, fixture::random_space(rng, 4), 3).scaled(5.0);
  const LinOp K = oracle::random_matrix(rng, 3);
  const FrameCertificate c = certify_k_frame(F, K);
  ASSERT_GT(c.B_opt, 20.0);
  const RobustnessReport r = stability_min_condition(F, F, K, 0.5, c);
  EXPECT_TRUE(r.certified);
  EXPECT_TRUE(r.variant_flags.at("upper_with_B"));
  EXPECT_FALSE(r.variant_flags.at("upper_literal"));
}

TEST(SumFamily, Examples) {
  const Frame w = worked();
  const RobustnessReport single = sum_family({w.F}, {w.cert}, {1.0}, 1, 1.0, w.K);
  EXPECT_TRUE(single.hypothesis_holds);
  EXPECT_NEAR(single.guaranteed_lower, w.cert.A_opt, 1e-12);
  EXPECT_NEAR(single.guaranteed_upper, w.cert.B_opt, 1e-15);

  const RobustnessReport copies = sum_family({w.F, w.F}, {w.cert, w.cert}, {1.0, 1.0}, 1, 4.0, w.K);
  EXPECT_TRUE(copies.hypothesis_holds);
  EXPECT_NEAR(copies.guaranteed_lower, 4.0 * w.cert.A_opt, 1e-12);
  expect_independently_valid(copies);

  const RobustnessReport cancel = sum_family({w.F, w.F}, {w.cert, w.cert}, {1.0, -1.0}, 1, 1e-3, w.K);
  EXPECT_FALSE(cancel.hypothesis_holds);
  EXPECT_FALSE(cancel.certified);

  EXPECT_KFRAME_ERROR(sum_family({w.F}, {w.cert}, {1.0}, 2, 1.0, w.K), IndexOutOfRange);
  EXPECT_KFRAME_ERROR(sum_family({w.F}, {w.cert}, {1.0}, 1, 0.0, w.K), BadBeta);
  EXPECT_EQ(fit_sum_beta({w.F, w.F}, {1.0, 1.0}, 1), 4.0);
}

TEST(Intertwined, Examples) {
  const Frame w = worked();
  const Index total = static_cast<Index>(w.F.size()) * 2;
  const LinOp I = LinOp::Identity(total, total);

  const RobustnessReport id = intertwined_sum({w.F}, {w.F}, I, 1, 0.0, w.K, {w.cert});
  EXPECT_TRUE(id.hypothesis_holds);
  EXPECT_NEAR(id.guaranteed_lower, w.cert.A_opt, 1e-12);
  EXPECT_NEAR(id.guaranteed_upper, 2.0 * w.cert.B_opt, 1e-15);
  EXPECT_TRUE(id.certified);

  const OperatorFamily half = w.F.scaled(0.5);
  const RobustnessReport h = intertwined_sum({w.F}, {half}, 2.0 * I, 1, 0.25, w.K, {w.cert});
  EXPECT_TRUE(h.hypothesis_holds);
  EXPECT_NEAR(h.values.at("L_norm"), 2.0, 1e-14);
  expect_independently_valid(h);

  EXPECT_KFRAME_ERROR(intertwined_sum({w.F}, {half}, I, 1, 0.25, w.K, {w.cert}), IntertwiningFailed);
}

TEST(L2OperatorNorm, UsesWeightedInnerProduct) {
  // A map that moves node 0 onto node 1: its weighted norm depends on w1/w0.
  const MeasureSpace m({0.0, 1.0}, {1.0, 4.0});
  LinOp shift = LinOp::Zero(2, 2);
  shift(1, 0) = 1.0;
  EXPECT_NEAR(l2_operator_norm(shift, m, 1), 2.0, 1e-14);
  EXPECT_NEAR(l2_operator_norm(LinOp::Identity(2, 2), m, 1), 1.0, 1e-14);
  EXPECT_KFRAME_ERROR(l2_operator_norm(LinOp::Identity(3, 3), m, 1), DimensionMismatch);
}

TEST(Robustness, ZeroPerturbationReproducesCertificate) {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 20; ++trial) {
    const Frame f = random_frame(rng, trial);
    const double A = f.cert.A_opt, B = f.cert.B_opt;
    const LinOp L = oracle::random_matrix(rng, f.K.rows());
    const ScalarSequence one = constant_seq(f.F.space(), 1.0);
    const RobustnessReport ru = perturb_rank_update(f.F, f.K, L, constant_seq(f.F.space(), 0.0), f.cert);
    EXPECT_NEAR(ru.guaranteed_lower, A, 1e-9 * A);
    EXPECT_NEAR(ru.guaranteed_upper, B, 1e-9 * B);
    const RobustnessReport st = stability_alpha_beta(f.F, f.F, f.K, 0.0, 0.0, f.cert);
    EXPECT_NEAR(st.guaranteed_lower, A, 1e-9 * A);
    EXPECT_NEAR(st.guaranteed_upper, B, 1e-9 * B);
    const RobustnessReport sf = sum_family({f.F}, {f.cert}, {1.0}, 1, 1.0, f.K);
    EXPECT_NEAR(sf.guaranteed_lower, A, 1e-9 * A);
    EXPECT_TRUE(relative_perturbation(f.F, f.F, one, one, 0.0, 0.0, f.K, f.cert).certified);
  }
}

TEST(Robustness, PassingGatesSurviveRayleighSampling) {
  std::mt19937_64 rng(64);
  const ToleranceConfig cfg;
  int passed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Frame f = random_frame(rng, trial);
    const OperatorFamily G = perturb(rng, f.F, 0.2);
    const double beta = 0.5 * f.cert.A_opt;
    const RobustnessReport r = stability_beta_only(f.F, G, f.K, beta, f.cert, cfg);
    const LinOp D = oracle::frame_operator(OperatorFamily(f.F.space(), [&] {
      std::vector<LinOp> d;
      for (std::size_t i = 0; i < f.F.size(); ++i) d.push_back(f.F[i] - G[i]);
      return d;
    }()));
    const LinOp rhs = beta * f.K * f.K.adjoint();
    if (r.hypothesis_holds) {
      ++passed;
      const double slack = cfg.psd_tol * (1.0 + oracle::spectral_norm(D) + oracle::spectral_norm(rhs));
      for (int s = 0; s < 1000; ++s) {
        const Vector x = oracle::random_unit(rng, f.K.rows());
        EXPECT_LE((x.dot(D * x)).real(), (x.dot(rhs * x)).real() + slack);
      }
      expect_independently_valid(r);
    } else {
      ASSERT_TRUE(r.hypothesis_witness);
      const Vector& x = *r.hypothesis_witness;
      EXPECT_GT((x.dot(D * x)).real(), (x.dot(rhs * x)).real());
    }
  }
  EXPECT_GT(passed, 0);
  EXPECT_LT(passed, 40);
}
