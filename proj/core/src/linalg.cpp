#include "kframe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kframe/error.hpp"

namespace kframe {

namespace {

using HermitianSolver = Eigen::SelfAdjointEigenSolver<LinOp>;

std::string dims_of(const LinOp& T) {
  return std::to_string(T.rows()) + "x" + std::to_string(T.cols());
}

}  // namespace

void ToleranceConfig::validate() const {
  auto ok = [](double v) { return std::isfinite(v) && v >= 0.0; };
  if (!ok(psd_tol) || !ok(residual_tol) || !ok(rank_tol)) {
    throw Error(ErrorCode::BadConfig, "tolerances must be finite and nonnegative");
  }
}

void require_square(const LinOp& T, std::string_view what) {
  if (T.rows() != T.cols() || T.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must be a nonempty square matrix, got " + dims_of(T));
  }
}

void require_finite(const LinOp& T, std::string_view what) {
  if (!T.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
  }
}

void require_finite(const Vector& x, std::string_view what) {
  if (!x.allFinite()) {
    throw Error(ErrorCode::NonFinite, std::string(what) + " has non-finite entries");
  }
}

void require_same_dim(const LinOp& A, const LinOp& B, std::string_view what) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + dims_of(A) + " vs " + dims_of(B));
  }
}

LinOp adjoint(const LinOp& T) { return T.adjoint(); }

double op_norm(const LinOp& T) {
  if (T.size() == 0) return 0.0;
  Eigen::JacobiSVD<LinOp> svd(T);
  return svd.singularValues()(0);
}

double min_singular(const LinOp& T, const ToleranceConfig& cfg) {
  if (T.size() == 0) return 0.0;
  Eigen::JacobiSVD<LinOp> svd(T);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  // A non-square T has a nontrivial kernel or cokernel.
  if (T.rows() != T.cols()) return 0.0;
  const double smin = sv(sv.size() - 1);
  if (smax == 0.0 || smin <= cfg.rank_tol * smax) return 0.0;
  return smin;
}

LinOp hermitian_part(const LinOp& P, const ToleranceConfig& cfg) {
  require_square(P, "operator");
  require_finite(P, "operator");
  const LinOp asym = P - P.adjoint();
  const double scale = 1.0 + op_norm(P);
  const double gap = op_norm(asym);
  if (gap > cfg.psd_tol * scale) {
    throw Error(ErrorCode::NotSelfAdjoint,
                "||P - P*|| = " + std::to_string(gap) + " exceeds tolerance");
  }
  return 0.5 * (P + P.adjoint());
}

Eigen::VectorXd eigenvalues_hermitian(const LinOp& P, const ToleranceConfig& cfg) {
  HermitianSolver es(hermitian_part(P, cfg), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double lambda_max(const LinOp& P, const ToleranceConfig& cfg) {
  const auto ev = eigenvalues_hermitian(P, cfg);
  return ev(ev.size() - 1);
}

double lambda_min(const LinOp& P, const ToleranceConfig& cfg) {
  return eigenvalues_hermitian(P, cfg)(0);
}

LinOp psd_sqrt(const LinOp& S, const ToleranceConfig& cfg) {
  const LinOp H = hermitian_part(S, cfg);
  HermitianSolver es(H);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = 1.0 + std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (ev(0) < -cfg.psd_tol * scale) {
    throw Error(ErrorCode::NotPSD, "smallest eigenvalue " + std::to_string(ev(0)) + " is negative");
  }
  for (Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(ev(i), 0.0));
  const LinOp& V = es.eigenvectors();
  LinOp R = V * ev.cast<Scalar>().asDiagonal() * V.adjoint();
  return 0.5 * (R + R.adjoint());
}

LinOp pinv(const LinOp& T, const ToleranceConfig& cfg) {
  require_finite(T, "operator");
  LinOp out = LinOp::Zero(T.cols(), T.rows());
  if (T.size() == 0) return out;
  Eigen::JacobiSVD<LinOp> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = cfg.rank_tol * sv(0);
  for (Index i = 0; i < sv.size(); ++i) {
    if (sv(i) == 0.0 || sv(i) <= cutoff) break;
    out += (svd.matrixV().col(i) / sv(i)) * svd.matrixU().col(i).adjoint();
  }
  return out;
}

LinOp range_basis(const LinOp& T, const ToleranceConfig& cfg) {
  if (T.size() == 0) return LinOp(T.rows(), 0);
  Eigen::JacobiSVD<LinOp> svd(T, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > 0.0 && sv(rank) > cfg.rank_tol * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

LoewnerResult loewner_leq(const LinOp& P, const LinOp& Q, const ToleranceConfig& cfg) {
  require_same_dim(P, Q, "loewner_leq");
  const LinOp Ph = hermitian_part(P, cfg);
  const LinOp Qh = hermitian_part(Q, cfg);
  HermitianSolver es(Qh - Ph);
  const double margin = es.eigenvalues()(0);
  HermitianSolver ep(Ph, Eigen::EigenvaluesOnly);
  HermitianSolver eq(Qh, Eigen::EigenvaluesOnly);
  auto spectral_norm = [](const Eigen::VectorXd& ev) {
    return std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  };
  const double slack =
      cfg.psd_tol * (1.0 + spectral_norm(ep.eigenvalues()) + spectral_norm(eq.eigenvalues()));
  LoewnerResult out;
  out.margin = margin;
  out.holds = margin >= -slack;
  if (!out.holds) out.witness = es.eigenvectors().col(0).normalized();
  return out;
}

double rayleigh(const LinOp& P, const Vector& x) {
  return inner(P * x, x).real() / x.squaredNorm();
}

PencilExtreme pencil_sup(const LinOp& M, const LinOp& S, const ToleranceConfig& cfg) {
  require_same_dim(M, S, "pencil_sup");
  const LinOp Mh = hermitian_part(M, cfg);
  const LinOp Sh = hermitian_part(S, cfg);
  const Index n = Sh.rows();

  HermitianSolver es(Sh);
  const Eigen::VectorXd& s = es.eigenvalues();
  const LinOp& V = es.eigenvectors();
  const double smax = std::max(s(n - 1), 0.0);

  // Eigenvalues are ascending: the first `kernel` columns span ker(S).
  Index kernel = 0;
  while (kernel < n && (smax == 0.0 || s(kernel) <= cfg.rank_tol * smax)) ++kernel;

  PencilExtreme out;
  out.witness = Vector::Zero(n);
  out.witness(0) = 1.0;

  const double m_norm = std::max(op_norm(Mh), 0.0);
  if (kernel > 0) {
    const LinOp V0 = V.leftCols(kernel);
    const LinOp N = V0.adjoint() * Mh * V0;
    HermitianSolver en(0.5 * (N + N.adjoint()));
    const double leak = std::max(en.eigenvalues()(kernel - 1), 0.0);
    // Compare on the square-root scale: for M = KK* this is ||P_ker(S) K||.
    if (std::sqrt(leak) > cfg.residual_tol * (1.0 + std::sqrt(m_norm))) {
      out.witness = (V0 * en.eigenvectors().col(kernel - 1)).normalized();
      return out;
    }
  }
  if (kernel == n) {
    out.ratio = 0.0;
    return out;
  }

  const Index r = n - kernel;
  const LinOp Vr = V.rightCols(r);
  const Eigen::VectorXd inv_sqrt = s.tail(r).cwiseSqrt().cwiseInverse();
  const LinOp C = inv_sqrt.cast<Scalar>().asDiagonal() * (Vr.adjoint() * Mh * Vr) *
                  inv_sqrt.cast<Scalar>().asDiagonal();
  HermitianSolver ec(0.5 * (C + C.adjoint()));
  out.ratio = std::max(ec.eigenvalues()(r - 1), 0.0);
  const Vector y = ec.eigenvectors().col(r - 1);
  out.witness = (Vr * (inv_sqrt.cast<Scalar>().asDiagonal() * y)).normalized();
  return out;
}

}  // namespace kframe
