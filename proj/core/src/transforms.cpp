#include "kframe/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "kframe/error.hpp"

namespace kframe {

namespace {

void require_on_space(const OperatorFamily& F, const LinOp& T, std::string_view name) {
  require_square(T, name);
  require_finite(T, name);
  if (T.rows() != F.dim()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(name) + " does not act on the family's space");
  }
}

TransformReport finish(OperatorFamily family, LinOp target, double lower, double upper,
                       const ToleranceConfig& cfg) {
  const LinOp S = frame_operator(family, cfg).S;
  BoundCheck check = verify_k_frame_bounds(S, target, lower, upper, cfg);
  FrameCertificate optimal = certify_k_frame(family, target, cfg);
  return TransformReport{std::move(family), std::move(target), lower, upper,
                         check.ok(),        std::move(optimal), std::move(check), std::nullopt};
}

// x <= y up to a relative slack
bool leq_rel(double x, double y, double tol) {
  if (std::isinf(x) || std::isinf(y)) return x <= y;
  return x <= y + tol * std::max({1.0, std::abs(x), std::abs(y)});
}

}  // namespace

TransformReport compose_right(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                              const FrameCertificate& cert, const ToleranceConfig& cfg) {
  require_on_space(F, K, "K");
  require_on_space(F, L, "L");
  const double l_norm = op_norm(L);
  return finish(F.compose_right(L), L.adjoint() * K, cert.usable_lower(),
                cert.B_opt * l_norm * l_norm, cfg);
}

TransformReport linear_combination_target(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                                          Scalar a, Scalar b, const FrameCertificate& cert_K,
                                          const FrameCertificate& cert_L,
                                          const ToleranceConfig& cfg) {
  require_on_space(F, K, "K");
  require_on_space(F, L, "L");
  if (a == Scalar(0.0) || b == Scalar(0.0)) {
    throw Error(ErrorCode::ZeroScalar, "both combination scalars must be nonzero");
  }
  const double A = cert_K.usable_lower();
  const double C = cert_L.usable_lower();
  double lower = 0.0;
  if (A > 0.0 && C > 0.0) {
    const double denom = std::sqrt(C) * std::abs(a) + std::sqrt(A) * std::abs(b);
    lower = A * C / (denom * denom);
  }
  const double upper = 0.5 * (cert_K.B_opt + cert_L.B_opt);
  TransformReport out = finish(F, a * K + b * L, lower, upper, cfg);
  out.sharper_upper = std::min(cert_K.B_opt, cert_L.B_opt);
  return out;
}

TransformReport product_target(const OperatorFamily& F, const LinOp& K, const LinOp& L,
                               const FrameCertificate& cert_K, const ToleranceConfig& cfg) {
  require_on_space(F, K, "K");
  require_on_space(F, L, "L");
  if (is_zero_operator(L, cfg)) throw Error(ErrorCode::ZeroOperator, "L must be nonzero");
  const double l_norm = op_norm(L);
  return finish(F, K * L, cert_K.usable_lower() / (l_norm * l_norm), cert_K.B_opt, cfg);
}

SubalgebraReport subalgebra_target(const OperatorFamily& F, const LinOp& K,
                                   const FrameCertificate& cert_K, const std::vector<Scalar>& poly,
                                   const ToleranceConfig& cfg) {
  require_on_space(F, K, "K");
  if (std::none_of(poly.begin(), poly.end(), [](Scalar c) { return c != Scalar(0.0); })) {
    throw Error(ErrorCode::ZeroPolynomial, "polynomial has no nonzero coefficient");
  }
  const Index n = F.dim();
  // q(K) = c_1 I + c_2 K + ... + c_m K^{m-1}, target = K q(K)
  LinOp q = LinOp::Zero(n, n);
  LinOp power = LinOp::Identity(n, n);
  for (Scalar c : poly) {
    q += c * power;
    power = (power * K).eval();
  }
  LinOp target = K * q;
  const double q_norm = op_norm(q);
  const double lower = q_norm > 0.0 ? cert_K.usable_lower() / (q_norm * q_norm) : 0.0;

  SubalgebraReport out{finish(F, target, lower, cert_K.B_opt, cfg), false};
  const bool expect_frame = cert_K.status == FrameStatus::KFrame && !is_zero_operator(out.transform.new_target, cfg);
  out.status_ok = !expect_frame || out.transform.optimal_cert.status == FrameStatus::KFrame;
  return out;
}

HomeomorphismReport homeomorphism_compose(const OperatorFamily& F, const LinOp& K, const LinOp& Q,
                                          const FrameCertificate& cert_K,
                                          const ToleranceConfig& cfg) {
  require_on_space(F, K, "K");
  require_on_space(F, Q, "Q");
  if (min_singular(Q, cfg) <= 0.0) throw Error(ErrorCode::NotInvertible, "Q is singular");
  const LinOp Q_inv = Q.fullPivLu().inverse();
  const LinOp K_adj = K.adjoint();
  const double q_norm = op_norm(Q);
  const double q_inv_norm = op_norm(Q_inv);
  const double commutator = op_norm(Q_inv * K_adj - K_adj * Q_inv);
  if (commutator > cfg.residual_tol * op_norm(K_adj) * q_inv_norm) {
    throw Error(ErrorCode::CommutationFailed,
                "||Q^-1 K* - K* Q^-1|| = " + std::to_string(commutator));
  }

  const double A = cert_K.usable_lower();
  const double B = cert_K.B_opt;
  const double shrink = 1.0 / (q_inv_norm * q_inv_norm);
  const double grow = q_norm * q_norm;

  HomeomorphismReport out{finish(F.compose_right(Q), K, A * shrink, B * grow, cfg)};
  const double C = out.transform.optimal_cert.usable_lower();
  const double D = out.transform.optimal_cert.B_opt;
  const double tol = cfg.residual_tol;
  out.lower_C = leq_rel(A * shrink, C, tol);
  out.upper_C = leq_rel(C, A * grow, tol);
  out.lower_D = leq_rel(B * shrink, D, tol);
  out.upper_D = leq_rel(D, B * grow, tol);
  out.sandwich_ok = out.lower_C && out.upper_C && out.lower_D && out.upper_D;
  return out;
}

}  // namespace kframe
