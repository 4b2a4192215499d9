#include "kframe/robustness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kframe/error.hpp"

namespace kframe {

namespace {

void require_same_space(const OperatorFamily& F, const OperatorFamily& G) {
  if (!(F.space() == G.space())) throw Error(ErrorCode::SpaceMismatch, "families live on different spaces");
  if (F.dim() != G.dim()) throw Error(ErrorCode::DimensionMismatch, "families act on different spaces");
}

void require_target(const OperatorFamily& F, const LinOp& K) {
  require_square(K, "K");
  require_finite(K, "K");
  if (K.rows() != F.dim()) throw Error(ErrorCode::DimensionMismatch, "K does not act on the family's space");
}

double require_kframe(const FrameCertificate& cert) {
  if (cert.status != FrameStatus::KFrame) {
    throw Error(ErrorCode::NotKFrame, std::string("base family certificate is ") +
                                          std::string(to_string(cert.status)));
  }
  return cert.A_opt;
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

/// per-node c_i A_i
std::vector<LinOp> weighted_ops(const OperatorFamily& F, const ScalarSequence& c) {
  std::vector<LinOp> out;
  out.reserve(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) out.push_back(c[i] * F[i]);
  return out;
}

LinOp gram(const OperatorFamily& F) { return weighted_gram(F.space(), F.ops()); }

RobustnessReport make_report(OperatorFamily family, const LinOp& K) {
  return RobustnessReport{std::move(family), K, false, std::nullopt, 0.0, 0.0, false, {}, {}, {}};
}

void gate(RobustnessReport& r, const LoewnerResult& hyp) {
  r.hypothesis_holds = hyp.holds;
  r.hypothesis_witness = hyp.witness;
}

void certify_into(RobustnessReport& r, const LinOp& S, const ToleranceConfig& cfg) {
  r.check = verify_k_frame_bounds(S, r.target, r.guaranteed_lower, r.guaranteed_upper, cfg);
  r.certified = r.check.ok();
}

bool upper_holds(const LinOp& S, double bound, const ToleranceConfig& cfg) {
  return loewner_leq(S, bound * LinOp::Identity(S.rows(), S.cols()), cfg).holds;
}

}  // namespace

LinOp diff_frame_operator(const OperatorFamily& F, const OperatorFamily& G) {
  require_same_space(F, G);
  std::vector<LinOp> diff;
  diff.reserve(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) diff.push_back(F[i] - G[i]);
  return weighted_gram(F.space(), diff);
}

OperatorFamily linear_sum(const std::vector<OperatorFamily>& families,
                          const std::vector<Scalar>& a_coeffs) {
  if (families.empty()) throw Error(ErrorCode::BadSpec, "no families to sum");
  if (a_coeffs.size() != families.size()) {
    throw Error(ErrorCode::DimensionMismatch, "one coefficient per family is required");
  }
  for (const auto& F : families) require_same_space(families.front(), F);
  std::vector<LinOp> ops(families.front().size(),
                         LinOp::Zero(families.front().dim(), families.front().dim()));
  for (std::size_t k = 0; k < families.size(); ++k) {
    for (std::size_t i = 0; i < ops.size(); ++i) ops[i] += a_coeffs[k] * families[k][i];
  }
  return OperatorFamily(families.front().space(), std::move(ops));
}

RobustnessReport perturb_rank_update(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                                     const ScalarSequence& a_seq, const FrameCertificate& cert,
                                     const ToleranceConfig& cfg) {
  require_target(F, K);
  require_target(F, L);
  if (is_zero_operator(L, cfg)) throw Error(ErrorCode::ZeroOperator, "L must be nonzero");
  if (!(a_seq.space() == F.space())) throw Error(ErrorCode::SpaceMismatch, "a_seq");

  const LinOp LK = L * K.adjoint();
  std::vector<LinOp> ops;
  ops.reserve(F.size());
  double mass = 0.0;
  for (std::size_t i = 0; i < F.size(); ++i) {
    ops.push_back(F[i] + a_seq[i] * LK);
    mass += F.space().weight(i) * std::norm(a_seq[i]);
  }
  RobustnessReport r = make_report(OperatorFamily(F.space(), std::move(ops)), K);

  const double A = cert.usable_lower();
  const double B = cert.B_opt;
  const double l_norm = op_norm(L);
  const double k_norm = op_norm(K);
  const double R = mass * l_norm * l_norm;
  r.values = {{"R", R}, {"integral_a2", mass}, {"L_norm", l_norm}, {"A", A}, {"B", B}};

  r.hypothesis_holds = R < A;
  r.variant_flags["condition_R_lt_A"] = R < A;
  r.variant_flags["condition_mass_lt_A_over_L_norm"] = mass < A / l_norm;

  const double root_gap = std::sqrt(A) - std::sqrt(R);
  r.guaranteed_lower = r.hypothesis_holds ? root_gap * root_gap : 0.0;
  const double up = std::sqrt(B) + std::sqrt(R) * k_norm;
  r.guaranteed_upper = up * up;
  if (r.hypothesis_holds) certify_into(r, gram(r.family), cfg);
  return r;
}

RobustnessReport relative_perturbation(const OperatorFamily& F, const OperatorFamily& G,
                                       const ScalarSequence& a_seq, const ScalarSequence& b_seq,
                                       double alpha, double beta, const LinOp& K,
                                       const FrameCertificate& cert, const ToleranceConfig& cfg) {
  require_same_space(F, G);
  require_target(F, K);
  if (!finite_nonneg(alpha) || !finite_nonneg(beta) || alpha >= 0.5 || beta >= 0.5) {
    throw Error(ErrorCode::BadAlphaBeta, "need 0 <= alpha, beta < 1/2");
  }
  if (!(a_seq.space() == F.space()) || !(b_seq.space() == F.space())) {
    throw Error(ErrorCode::SpaceMismatch, "scalar sequences live on a different space");
  }
  const Confinement ca = positively_confined_check(a_seq);
  const Confinement cb = positively_confined_check(b_seq);
  if (!ca.confined || !cb.confined) throw Error(ErrorCode::NotConfined, "a and b must be positively confined");

  const std::vector<LinOp> a_lambda = weighted_ops(F, a_seq);
  const std::vector<LinOp> b_gamma = weighted_ops(G, b_seq);
  std::vector<LinOp> mix(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) mix[i] = a_lambda[i] - b_gamma[i];
  const LinOp S_mix = weighted_gram(F.space(), mix);
  const LinOp S_a = weighted_gram(F.space(), a_lambda);
  const LinOp S_b = weighted_gram(F.space(), b_gamma);

  RobustnessReport r = make_report(G, K);
  gate(r, loewner_leq(S_mix, alpha * S_a + beta * S_b, cfg));

  const double c_lo = (1.0 - 2.0 * alpha) * ca.inf * ca.inf / (2.0 * (1.0 + beta) * cb.sup * cb.sup);
  const double c_hi = 2.0 * (1.0 + alpha) * ca.sup * ca.sup / ((1.0 - 2.0 * beta) * cb.inf * cb.inf);
  r.values = {{"alpha", alpha},  {"beta", beta},   {"sandwich_lower", c_lo},
              {"sandwich_upper", c_hi}, {"inf_a", ca.inf}, {"sup_a", ca.sup},
              {"inf_b", cb.inf}, {"sup_b", cb.sup}};
  r.guaranteed_lower = c_lo * cert.usable_lower();
  r.guaranteed_upper = c_hi * cert.B_opt;
  if (!r.hypothesis_holds) return r;

  const LinOp S_lambda = gram(F);
  const LinOp S_gamma = gram(G);
  const bool lo = loewner_leq(c_lo * S_lambda, S_gamma, cfg).holds;
  const bool hi = loewner_leq(S_gamma, c_hi * S_lambda, cfg).holds;
  r.variant_flags["sandwich_lower"] = lo;
  r.variant_flags["sandwich_upper"] = hi;
  certify_into(r, S_gamma, cfg);
  r.certified = r.certified && lo && hi;
  return r;
}

RobustnessReport stability_alpha_beta(const OperatorFamily& F, const OperatorFamily& G,
                                      const LinOp& K, double alpha, double beta,
                                      const FrameCertificate& cert, const ToleranceConfig& cfg) {
  require_same_space(F, G);
  require_target(F, K);
  const double A = require_kframe(cert);
  const double B = cert.B_opt;
  if (!finite_nonneg(alpha) || !finite_nonneg(beta) || alpha + beta / A >= 1.0) {
    throw Error(ErrorCode::BadAlphaBeta, "need alpha, beta >= 0 and alpha + beta/A < 1");
  }
  const LinOp S_diff = diff_frame_operator(F, G);
  const LinOp S_lambda = gram(F);
  const LinOp KK = K * K.adjoint();

  RobustnessReport r = make_report(G, K);
  gate(r, loewner_leq(S_diff, alpha * S_lambda + beta * KK, cfg));

  const double k_norm = op_norm(K);
  const double c = alpha + beta / A;
  r.guaranteed_lower = A * (1.0 - std::sqrt(c)) * (1.0 - std::sqrt(c));
  const double safe = std::sqrt(B) + std::sqrt(alpha * B + beta * k_norm * k_norm);
  r.guaranteed_upper = safe * safe;
  const double stated = B * std::pow(1.0 + std::sqrt(alpha + beta * k_norm / B), 2);
  const double chained = B * std::pow(alpha + beta * k_norm / B, 2);
  r.values = {{"alpha", alpha}, {"beta", beta}, {"A", A}, {"B", B},
              {"upper_stated", stated}, {"upper_chained", chained}};
  if (!r.hypothesis_holds) return r;

  const LinOp S_gamma = gram(G);
  r.variant_flags["upper_safe"] = upper_holds(S_gamma, r.guaranteed_upper, cfg);
  r.variant_flags["upper_stated"] = upper_holds(S_gamma, stated, cfg);
  r.variant_flags["upper_chained"] = upper_holds(S_gamma, chained, cfg);
  certify_into(r, S_gamma, cfg);
  return r;
}

RobustnessReport stability_beta_only(const OperatorFamily& F, const OperatorFamily& G,
                                     const LinOp& K, double beta, const FrameCertificate& cert,
                                     const ToleranceConfig& cfg) {
  const double A = require_kframe(cert);
  if (!std::isfinite(beta) || !(beta > 0.0) || !(beta < A)) {
    throw Error(ErrorCode::BadBeta, "need 0 < beta < A");
  }
  return stability_alpha_beta(F, G, K, 0.0, beta, cert, cfg);
}

RobustnessReport stability_min_condition(const OperatorFamily& F, const OperatorFamily& G,
                                         const LinOp& K, double M, const FrameCertificate& cert,
                                         const ToleranceConfig& cfg) {
  require_same_space(F, G);
  require_target(F, K);
  const double A = require_kframe(cert);
  const double B = cert.B_opt;
  if (!std::isfinite(M) || !(M > 0.0)) throw Error(ErrorCode::BadM, "need M > 0");

  const LinOp S_diff = diff_frame_operator(F, G);
  const LinOp S_lambda = gram(F);
  const LinOp S_gamma = gram(G);

  RobustnessReport r = make_report(G, K);
  const LoewnerResult by_lambda = loewner_leq(S_diff, M * S_lambda, cfg);
  const LoewnerResult by_gamma = loewner_leq(S_diff, M * S_gamma, cfg);
  gate(r, by_lambda.holds ? by_gamma : by_lambda);

  r.guaranteed_lower = A / (2.0 * (M + 1.0));
  r.guaranteed_upper = 2.0 * (M + 1.0) * B;
  r.values = {{"M", M}, {"A", A}, {"B", B}, {"upper_literal", 2.0 * (M + 1.0)}};
  if (!r.hypothesis_holds) return r;

  r.variant_flags["upper_with_B"] = upper_holds(S_gamma, r.guaranteed_upper, cfg);
  r.variant_flags["upper_literal"] = upper_holds(S_gamma, 2.0 * (M + 1.0), cfg);
  certify_into(r, S_gamma, cfg);
  return r;
}

RobustnessReport sum_family(const std::vector<OperatorFamily>& families,
                            const std::vector<FrameCertificate>& certs,
                            const std::vector<Scalar>& a_coeffs, std::size_t p, double beta,
                            const LinOp& K, const ToleranceConfig& cfg) {
  if (families.empty()) throw Error(ErrorCode::BadSpec, "no families to sum");
  if (p < 1 || p > families.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "p = " + std::to_string(p) + " outside 1.." +
                                                std::to_string(families.size()));
  }
  if (certs.size() != families.size()) throw Error(ErrorCode::DimensionMismatch, "one certificate per family");
  if (!std::isfinite(beta) || !(beta > 0.0)) throw Error(ErrorCode::BadBeta, "need beta > 0");
  OperatorFamily summed = linear_sum(families, a_coeffs);
  require_target(summed, K);

  const LinOp S_p = gram(families[p - 1]);
  const LinOp S_sum = gram(summed);
  RobustnessReport r = make_report(std::move(summed), K);
  gate(r, loewner_leq(beta * S_p, S_sum, cfg));

  double max_a2 = 0.0;
  double sum_B = 0.0;
  for (std::size_t k = 0; k < families.size(); ++k) {
    max_a2 = std::max(max_a2, std::norm(a_coeffs[k]));
    sum_B += certs[k].B_opt;
  }
  const double A_p = certs[p - 1].usable_lower();
  const double n = static_cast<double>(families.size());
  r.guaranteed_lower = A_p * beta;
  r.guaranteed_upper = n * max_a2 * sum_B;
  const double k_norm = op_norm(K);
  r.values = {{"beta", beta}, {"A_p", A_p}, {"sum_B", sum_B}, {"max_a2", max_a2}};
  if (!r.hypothesis_holds) return r;

  r.variant_flags["lower_literal_op_norm"] =
      loewner_leq(A_p * beta * k_norm * k_norm * LinOp::Identity(K.rows(), K.rows()), S_sum, cfg).holds;
  certify_into(r, S_sum, cfg);
  return r;
}

double l2_operator_norm(const LinOp& l_map, const MeasureSpace& space, Index dim) {
  const Index total = static_cast<Index>(space.size()) * dim;
  if (l_map.rows() != total || l_map.cols() != total) {
    throw Error(ErrorCode::DimensionMismatch, "l2 operator must be " + std::to_string(total) +
                                                  "x" + std::to_string(total));
  }
  std::vector<Index> kept;
  for (std::size_t i = 0; i < space.size(); ++i) {
    if (space.weight(i) > 0.0) kept.push_back(static_cast<Index>(i));
  }
  const Index m = static_cast<Index>(kept.size()) * dim;
  LinOp weighted(m, m);
  for (std::size_t bi = 0; bi < kept.size(); ++bi) {
    const double wr = std::sqrt(space.weight(static_cast<std::size_t>(kept[bi])));
    for (std::size_t bj = 0; bj < kept.size(); ++bj) {
      const double wc = std::sqrt(space.weight(static_cast<std::size_t>(kept[bj])));
      weighted.block(static_cast<Index>(bi) * dim, static_cast<Index>(bj) * dim, dim, dim) =
          (wr / wc) * l_map.block(kept[bi] * dim, kept[bj] * dim, dim, dim);
    }
  }
  return op_norm(weighted);
}

RobustnessReport intertwined_sum(const std::vector<OperatorFamily>& families,
                                 const std::vector<OperatorFamily>& perturbed,
                                 const LinOp& l_map, std::size_t p, double lambda, const LinOp& K,
                                 const std::vector<FrameCertificate>& certs,
                                 const ToleranceConfig& cfg) {
  if (families.empty()) throw Error(ErrorCode::BadSpec, "no families");
  if (perturbed.size() != families.size() || certs.size() != families.size()) {
    throw Error(ErrorCode::DimensionMismatch, "need one perturbed family and certificate per family");
  }
  if (p < 1 || p > families.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "p = " + std::to_string(p) + " outside 1.." +
                                                std::to_string(families.size()));
  }
  if (!finite_nonneg(lambda)) throw Error(ErrorCode::BadLambda, "need lambda >= 0");
  for (std::size_t k = 0; k < families.size(); ++k) {
    require_same_space(families.front(), families[k]);
    require_same_space(families.front(), perturbed[k]);
  }
  const MeasureSpace& space = families.front().space();
  const Index dim = families.front().dim();
  require_target(families.front(), K);

  OperatorFamily summed = linear_sum(perturbed, std::vector<Scalar>(perturbed.size(), 1.0));
  const double l_norm = l2_operator_norm(l_map, space, dim);

  auto weighted_norm = [&](const Vector& stacked) {
    double acc = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
      acc += space.weight(i) * stacked.segment(static_cast<Index>(i) * dim, dim).squaredNorm();
    }
    return std::sqrt(acc);
  };
  double worst = 0.0;
  for (Index j = 0; j < dim; ++j) {
    const Vector e = Vector::Unit(dim, j);
    const Vector source = analysis_apply(summed, e).stacked();
    const Vector want = analysis_apply(families[p - 1], e).stacked();
    const double miss = weighted_norm(l_map * source - want);
    worst = std::max(worst, miss);
    if (miss > cfg.residual_tol * (1.0 + l_norm * weighted_norm(source))) {
      throw Error(ErrorCode::IntertwiningFailed,
                  "L (sum Gamma x) != (Lambda_p x) for basis vector " + std::to_string(j) +
                      ", miss " + std::to_string(miss));
    }
  }

  RobustnessReport r = make_report(std::move(summed), K);
  r.hypothesis_holds = true;
  for (std::size_t k = 0; k < families.size(); ++k) {
    const LoewnerResult hyp =
        loewner_leq(diff_frame_operator(families[k], perturbed[k]), lambda * gram(families[k]), cfg);
    if (!hyp.holds) {
      gate(r, hyp);
      break;
    }
  }

  double sum_B = 0.0;
  for (const auto& c : certs) sum_B += c.B_opt;
  const double n = static_cast<double>(families.size());
  const double A_p = certs[p - 1].usable_lower();
  r.guaranteed_lower = l_norm > 0.0 ? A_p / (l_norm * l_norm) : 0.0;
  r.guaranteed_upper = 2.0 * n * (1.0 + lambda) * sum_B;
  r.values = {{"lambda", lambda}, {"L_norm", l_norm}, {"A_p", A_p}, {"sum_B", sum_B},
              {"intertwining_residual", worst}};
  if (r.hypothesis_holds) certify_into(r, gram(r.family), cfg);
  return r;
}

std::optional<double> fit_relative_alpha_beta(const OperatorFamily& F, const OperatorFamily& G,
                                              const ScalarSequence& a_seq,
                                              const ScalarSequence& b_seq,
                                              const ToleranceConfig& cfg) {
  require_same_space(F, G);
  const std::vector<LinOp> a_lambda = weighted_ops(F, a_seq);
  const std::vector<LinOp> b_gamma = weighted_ops(G, b_seq);
  std::vector<LinOp> mix(F.size());
  for (std::size_t i = 0; i < F.size(); ++i) mix[i] = a_lambda[i] - b_gamma[i];
  const LinOp S_both = weighted_gram(F.space(), a_lambda) + weighted_gram(F.space(), b_gamma);
  return pencil_sup(weighted_gram(F.space(), mix), S_both, cfg).ratio;
}

std::optional<std::pair<double, double>> fit_stability(const OperatorFamily& F,
                                                       const OperatorFamily& G, const LinOp& K,
                                                       const ToleranceConfig& cfg) {
  if (auto beta = fit_stability_beta(F, G, K, cfg)) return std::pair{0.0, *beta};
  if (auto alpha = pencil_sup(diff_frame_operator(F, G), gram(F), cfg).ratio) {
    return std::pair{*alpha, 0.0};
  }
  return std::nullopt;
}

std::optional<double> fit_stability_beta(const OperatorFamily& F, const OperatorFamily& G,
                                         const LinOp& K, const ToleranceConfig& cfg) {
  require_target(F, K);
  return pencil_sup(diff_frame_operator(F, G), K * K.adjoint(), cfg).ratio;
}

std::optional<double> fit_min_condition(const OperatorFamily& F, const OperatorFamily& G,
                                        const ToleranceConfig& cfg) {
  const LinOp S_diff = diff_frame_operator(F, G);
  const auto by_lambda = pencil_sup(S_diff, gram(F), cfg).ratio;
  const auto by_gamma = pencil_sup(S_diff, gram(G), cfg).ratio;
  if (!by_lambda || !by_gamma) return std::nullopt;
  return std::max(*by_lambda, *by_gamma);
}

double fit_sum_beta(const std::vector<OperatorFamily>& families,
                    const std::vector<Scalar>& a_coeffs, std::size_t p,
                    const ToleranceConfig& cfg) {
  if (p < 1 || p > families.size()) throw Error(ErrorCode::IndexOutOfRange, "p");
  const OperatorFamily summed = linear_sum(families, a_coeffs);
  const auto ratio = pencil_sup(gram(families[p - 1]), gram(summed), cfg).ratio;
  if (!ratio) return 0.0;
  if (*ratio <= 0.0) return 1.0;  // S_p = 0: every beta works
  return 1.0 / *ratio;
}

std::optional<double> fit_intertwined_lambda(const std::vector<OperatorFamily>& families,
                                             const std::vector<OperatorFamily>& perturbed,
                                             const ToleranceConfig& cfg) {
  if (families.size() != perturbed.size()) throw Error(ErrorCode::DimensionMismatch, "family counts");
  double lambda = 0.0;
  for (std::size_t k = 0; k < families.size(); ++k) {
    auto ratio = pencil_sup(diff_frame_operator(families[k], perturbed[k]), gram(families[k]), cfg).ratio;
    if (!ratio) return std::nullopt;
    lambda = std::max(lambda, *ratio);
  }
  return lambda;
}

}  // namespace kframe
