#include "kframe/certify.hpp"

#include <cmath>
#include <limits>

#include "kframe/error.hpp"

namespace kframe {

namespace {

void require_target(const OperatorFamily& F, const LinOp& K) {
  require_square(K, "K");
  require_finite(K, "K");
  if (K.rows() != F.dim()) throw Error(ErrorCode::DimensionMismatch, "K does not act on the family's space");
}

Vector unit(Index n) {
  Vector e = Vector::Zero(n);
  e(0) = 1.0;
  return e;
}

bool operator_equal(const LinOp& X, const LinOp& Y, double tol) {
  return op_norm(X - Y) <= tol * (1.0 + std::max(op_norm(X), op_norm(Y)));
}

}  // namespace

std::string_view to_string(FrameStatus status) noexcept {
  switch (status) {
    case FrameStatus::KFrame: return "KFrame";
    case FrameStatus::BesselOnly: return "BesselOnly";
    case FrameStatus::NotBessel: return "NotBessel";
    case FrameStatus::Degenerate: return "Degenerate";
  }
  return "Unknown";
}

bool is_zero_operator(const LinOp& T, const ToleranceConfig& cfg) {
  return op_norm(T) <= cfg.rank_tol;
}

double bessel_bound(const OperatorFamily& F, const ToleranceConfig& cfg) {
  return std::max(lambda_max(frame_operator(F, cfg).S, cfg), 0.0);
}

LowerBound k_frame_lower_bound(const OperatorFamily& F, const LinOp& K, const ToleranceConfig& cfg) {
  require_target(F, K);
  if (is_zero_operator(K, cfg)) throw Error(ErrorCode::ZeroK, "K = 0 makes the lower bound vacuous");
  const LinOp S = frame_operator(F, cfg).S;
  const PencilExtreme p = pencil_sup(K * K.adjoint(), S, cfg);
  LowerBound out;
  out.witness = p.witness;
  if (!p.ratio) {
    out.A_opt = 0.0;  // some x in ker(S) has K*x != 0
  } else if (*p.ratio <= 0.0) {
    throw Error(ErrorCode::ZeroK, "KK* vanishes numerically");
  } else {
    out.A_opt = 1.0 / *p.ratio;
  }
  return out;
}

double k_frame_lower(const OperatorFamily& F, const LinOp& K, const ToleranceConfig& cfg) {
  return k_frame_lower_bound(F, K, cfg).A_opt;
}

BoundCheck verify_k_frame_bounds(const LinOp& S, const LinOp& target, double lower, double upper,
                                 const ToleranceConfig& cfg) {
  BoundCheck out;
  const Index n = S.rows();
  const LinOp lower_form =
      (lower == 0.0) ? LinOp::Zero(n, n) : LinOp(lower * (target * target.adjoint()));
  auto lo = loewner_leq(lower_form, S, cfg);
  auto hi = loewner_leq(S, upper * LinOp::Identity(n, n), cfg);
  out.lower_ok = lo.holds;
  out.upper_ok = hi.holds;
  out.lower_witness = lo.witness;
  out.upper_witness = hi.witness;
  return out;
}

FrameCertificate certify_k_frame(const OperatorFamily& F, const LinOp& K, const ToleranceConfig& cfg) {
  require_target(F, K);
  const LinOp S = frame_operator(F, cfg).S;
  const Index n = F.dim();

  FrameCertificate cert;
  Eigen::SelfAdjointEigenSolver<LinOp> es(S);
  cert.B_opt = std::max(es.eigenvalues()(n - 1), 0.0);
  cert.upper_witness = es.eigenvectors().col(n - 1);

  if (is_zero_operator(K, cfg)) {
    cert.status = FrameStatus::Degenerate;
    cert.A_opt = std::numeric_limits<double>::infinity();
    cert.lower_witness = unit(n);
    cert.verified = loewner_leq(S, cert.B_opt * LinOp::Identity(n, n), cfg).holds;
    return cert;
  }

  const PencilExtreme p = pencil_sup(K * K.adjoint(), S, cfg);
  cert.lower_witness = p.witness;
  if (!p.ratio) {
    cert.status = FrameStatus::BesselOnly;
    cert.A_opt = 0.0;
  } else if (*p.ratio <= 0.0) {
    cert.status = FrameStatus::Degenerate;
    cert.A_opt = std::numeric_limits<double>::infinity();
    cert.verified = loewner_leq(S, cert.B_opt * LinOp::Identity(n, n), cfg).holds;
    return cert;
  } else {
    cert.status = FrameStatus::KFrame;
    cert.A_opt = 1.0 / *p.ratio;
  }

  cert.verified = verify_k_frame_bounds(S, K, cert.A_opt, cert.B_opt, cfg).ok();
  if (cert.status == FrameStatus::KFrame) {
    cert.tight = operator_equal(S, cert.A_opt * (K * K.adjoint()), cfg.psd_tol);
    cert.parseval = cert.tight && std::abs(cert.A_opt - 1.0) <= 1e-9;
  }
  return cert;
}

MajorizationReport majorization_equivalence(const OperatorFamily& F, const LinOp& K,
                                            const ToleranceConfig& cfg) {
  require_target(F, K);
  const Index n = F.dim();
  MajorizationReport out;
  if (is_zero_operator(K, cfg)) {
    out.vacuous = true;
    out.has_A = out.majorized = out.factorizable = true;
    out.A = std::numeric_limits<double>::infinity();
    out.L = LinOp::Zero(n, n);
    return out;
  }

  const LinOp S = frame_operator(F, cfg).S;

  // (1) pencil route
  out.A = k_frame_lower(F, K, cfg);
  out.has_A = out.A > 0.0;

  // (3) factorization route. S^{1/2} has singular values sqrt(s_i), so the
  // rank decision made on S at rank_tol maps to sqrt(rank_tol) here.
  const LinOp R = psd_sqrt(S, cfg);
  ToleranceConfig root_cfg = cfg;
  root_cfg.rank_tol = std::sqrt(cfg.rank_tol);
  out.L = pinv(R, root_cfg) * K;
  out.residual = op_norm(R * out.L - K);
  out.factorizable = out.residual <= cfg.residual_tol * (1.0 + op_norm(K));

  // (2) majorization with the constant the factorization suggests
  const double l_norm = op_norm(out.L);
  if (l_norm > 0.0) {
    const double A_candidate = 1.0 / (l_norm * l_norm);
    out.majorized = loewner_leq(A_candidate * (K * K.adjoint()), S, cfg).holds;
  }
  return out;
}

OrdinaryFrameReport surjective_reduction(const OperatorFamily& F, const LinOp& K,
                                         const FrameCertificate& cert, const ToleranceConfig& cfg) {
  require_target(F, K);
  OrdinaryFrameReport out;
  out.alpha = min_singular(K, cfg);
  if (cert.status != FrameStatus::KFrame || out.alpha <= 0.0) return out;
  out.is_ordinary_frame = true;
  out.lower = out.alpha * out.alpha * cert.A_opt;
  out.upper = cert.B_opt;
  const LinOp S = frame_operator(F, cfg).S;
  out.certified = verify_k_frame_bounds(S, LinOp::Identity(F.dim(), F.dim()), out.lower, out.upper, cfg).ok();
  return out;
}

TightDualReport tight_dual_check(const OperatorFamily& F, const LinOp& K, const ToleranceConfig& cfg) {
  const FrameCertificate cert = certify_k_frame(F, K, cfg);
  TightDualReport out;
  out.B = cert.B_opt;
  if (out.B <= 0.0) throw Error(ErrorCode::DivideByZero, "upper bound B is zero");
  out.A = cert.A_opt;
  out.is_tight_K = cert.tight;

  const Index n = F.dim();
  const LinOp S = frame_operator(F, cfg).S;
  const LinOp I = LinOp::Identity(n, n);
  out.is_tight_ordinary = operator_equal(S, out.B * I, cfg.psd_tol);

  if (cert.status == FrameStatus::KFrame) {
    const LinOp right_inverse_candidate = (out.A / out.B) * K.adjoint();
    out.duality_holds = op_norm(K * right_inverse_candidate - I) <= cfg.residual_tol;
  }
  out.biconditional_holds = !out.is_tight_K || (out.is_tight_ordinary == out.duality_holds);
  return out;
}

}  // namespace kframe
