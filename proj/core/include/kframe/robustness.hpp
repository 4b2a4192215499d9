#pragma once

// Perturbation and stability checks. Each "for all x" hypothesis is reduced
// to a Loewner comparison between PSD quadratic forms before any bound is
// claimed; guaranteed bounds are then verified against the frame operator of
// the resulting family.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kframe/certify.hpp"
#include "kframe/family.hpp"
#include "kframe/measure.hpp"

namespace kframe {

/// Scalar hypothesis data; which fields matter depends on the check.
struct ConditionParams {
  double alpha = 0.0;
  double beta = 0.0;
  double M = 0.0;
  double lambda = 0.0;
  std::optional<ScalarSequence> a_seq;
  std::optional<ScalarSequence> b_seq;
  std::vector<Scalar> a_coeffs;
};

struct RobustnessReport {
  OperatorFamily family;  // the family whose bounds are certified
  LinOp target;
  bool hypothesis_holds = false;
  std::optional<Vector> hypothesis_witness;
  double guaranteed_lower = 0.0;
  double guaranteed_upper = 0.0;
  bool certified = false;
  BoundCheck check;
  // Alternative readings of a bound or condition, evaluated but never asserted.
  std::map<std::string, bool> variant_flags;
  std::map<std::string, double> values;
};

/// sum_i w_i (Lambda_i - Gamma_i)*(Lambda_i - Gamma_i)
LinOp diff_frame_operator(const OperatorFamily& F, const OperatorFamily& G);

/// Gamma_w = Lambda_w + a_w L K*. Gate: R = sum w |a|^2 ||L||^2 < A.
RobustnessReport perturb_rank_update(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                                     const ScalarSequence& a_seq, const FrameCertificate& cert,
                                     const ToleranceConfig& cfg = {});

/// Gate: sum w ||a Lambda x - b Gamma x||^2 <= alpha sum w ||a Lambda x||^2 + beta sum w ||b Gamma x||^2
/// with confined a, b and 0 <= alpha, beta < 1/2.
RobustnessReport relative_perturbation(const OperatorFamily& F, const OperatorFamily& G,
                                       const ScalarSequence& a_seq, const ScalarSequence& b_seq,
                                       double alpha, double beta, const LinOp& K,
                                       const FrameCertificate& cert,
                                       const ToleranceConfig& cfg = {});

/// Gate: S_diff <= alpha S_Lambda + beta KK* with alpha + beta/A < 1.
RobustnessReport stability_alpha_beta(const OperatorFamily& F, const OperatorFamily& G,
                                      const LinOp& K, double alpha, double beta,
                                      const FrameCertificate& cert,
                                      const ToleranceConfig& cfg = {});

/// Gate: S_diff <= beta KK* with 0 < beta < A.
RobustnessReport stability_beta_only(const OperatorFamily& F, const OperatorFamily& G,
                                     const LinOp& K, double beta, const FrameCertificate& cert,
                                     const ToleranceConfig& cfg = {});

/// Gate: S_diff <= M S_Lambda and S_diff <= M S_Gamma.
RobustnessReport stability_min_condition(const OperatorFamily& F, const OperatorFamily& G,
                                         const LinOp& K, double M, const FrameCertificate& cert,
                                         const ToleranceConfig& cfg = {});

/// sum_k a_k Lambda_k with gate beta S_p <= S_sum; p is 1-based.
RobustnessReport sum_family(const std::vector<OperatorFamily>& families,
                            const std::vector<FrameCertificate>& certs,
                            const std::vector<Scalar>& a_coeffs, std::size_t p, double beta,
                            const LinOp& K, const ToleranceConfig& cfg = {});

/// sum_k Gamma_k where L_map (an operator on l2, node-major blocks) sends
/// (sum_k Gamma_k x) to (Lambda_p x). Gate: S_diff,k <= lambda S_Lambda,k for every k.
RobustnessReport intertwined_sum(const std::vector<OperatorFamily>& families,
                                 const std::vector<OperatorFamily>& perturbed,
                                 const LinOp& l_map, std::size_t p, double lambda, const LinOp& K,
                                 const std::vector<FrameCertificate>& certs,
                                 const ToleranceConfig& cfg = {});

/// Norm of an operator on l2(Omega, H) under the weighted inner product.
/// Zero-weight nodes carry no mass and are dropped.
double l2_operator_norm(const LinOp& l_map, const MeasureSpace& space, Index dim);

// Sharpest admissible hypothesis parameters, computed as pencil extremes.

/// alpha = beta = t, the smallest t with S_mix <= t (S_aLambda + S_bGamma); empty if none.
std::optional<double> fit_relative_alpha_beta(const OperatorFamily& F, const OperatorFamily& G,
                                              const ScalarSequence& a_seq,
                                              const ScalarSequence& b_seq,
                                              const ToleranceConfig& cfg = {});
/// (alpha, beta): beta from S_diff <= beta KK* with alpha = 0 when finite,
/// otherwise alpha from S_diff <= alpha S_Lambda with beta = 0.
std::optional<std::pair<double, double>> fit_stability(const OperatorFamily& F,
                                                       const OperatorFamily& G, const LinOp& K,
                                                       const ToleranceConfig& cfg = {});
std::optional<double> fit_stability_beta(const OperatorFamily& F, const OperatorFamily& G,
                                         const LinOp& K, const ToleranceConfig& cfg = {});
std::optional<double> fit_min_condition(const OperatorFamily& F, const OperatorFamily& G,
                                        const ToleranceConfig& cfg = {});
/// Largest beta with beta S_p <= S_sum (0 when none is positive).
double fit_sum_beta(const std::vector<OperatorFamily>& families,
                    const std::vector<Scalar>& a_coeffs, std::size_t p,
                    const ToleranceConfig& cfg = {});
std::optional<double> fit_intertwined_lambda(const std::vector<OperatorFamily>& families,
                                             const std::vector<OperatorFamily>& perturbed,
                                             const ToleranceConfig& cfg = {});

OperatorFamily linear_sum(const std::vector<OperatorFamily>& families,
                          const std::vector<Scalar>& a_coeffs);

}  // namespace kframe
