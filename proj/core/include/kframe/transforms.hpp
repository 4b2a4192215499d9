#pragma once

// Constructive checks for frame transformations: right composition,
// combined and product targets, polynomial targets and composition with a
// homeomorphism commuting with K*.

#include <optional>
#include <vector>

#include "kframe/certify.hpp"
#include "kframe/family.hpp"

namespace kframe {

struct TransformReport {
  OperatorFamily new_family;
  LinOp new_target;
  double guaranteed_lower = 0.0;
  double guaranteed_upper = 0.0;
  bool certified = false;
  FrameCertificate optimal_cert;
  BoundCheck check;
  std::optional<double> sharper_upper;
};

/// {Lambda_w L} against target L*K with bounds (A, B ||L||^2).
TransformReport compose_right(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                              const FrameCertificate& cert, const ToleranceConfig& cfg = {});

/// Same family against aK + bL with bounds AC / (sqrt(C)|a| + sqrt(A)|b|)^2
/// and (B + D)/2; min(B, D) is kept as sharper_upper.
TransformReport linear_combination_target(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                                          Scalar a, Scalar b, const FrameCertificate& cert_K,
                                          const FrameCertificate& cert_L,
                                          const ToleranceConfig& cfg = {});

/// Same family against KL with bounds (A / ||L||^2, B).
TransformReport product_target(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                               const FrameCertificate& cert_K, const ToleranceConfig& cfg = {});

struct SubalgebraReport {
  TransformReport transform;
  bool status_ok = false;  // KFrame whenever K certifies and the target is nonzero
};

/// Target c_1 K + c_2 K^2 + ... + c_m K^m (no constant term). The guarantee
/// factors the target as K q(K), giving (A / ||q(K)||^2, B).
SubalgebraReport subalgebra_target(const OperatorFamily& F, const LinOp& K,
                                   const FrameCertificate& cert_K, const std::vector<Scalar>& poly,
                                   const ToleranceConfig& cfg = {});

struct HomeomorphismReport {
  TransformReport transform;
  // A||Q^-1||^-2 <= C, C <= A||Q||^2, B||Q^-1||^-2 <= D, D <= B||Q||^2
  bool lower_C = false;
  bool upper_C = false;
  bool lower_D = false;
  bool upper_D = false;
  bool sandwich_ok = false;
};

/// {Lambda_w Q} for invertible Q with Q^-1 commuting with K*. cert_K must
/// hold the best bounds (A, B) of F.
HomeomorphismReport homeomorphism_compose(const OperatorFamily& F, const LinOp& K, const LinOp& Q,
                                          const FrameCertificate& cert_K,
                                          const ToleranceConfig& cfg = {});

}  // namespace kframe
