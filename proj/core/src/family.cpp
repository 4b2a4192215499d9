#include "kframe/family.hpp"

#include <cmath>
#include <string>

#include "kframe/error.hpp"

namespace kframe {

OperatorFamily::OperatorFamily(MeasureSpace space, std::vector<LinOp> ops)
    : space_(std::move(space)), ops_(std::move(ops)) {
  if (ops_.size() != space_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "family has " + std::to_string(ops_.size()) +
                                                  " operators for " +
                                                  std::to_string(space_.size()) + " nodes");
  }
  require_square(ops_.front(), "family operator");
  dim_ = ops_.front().rows();
  for (const auto& op : ops_) {
    require_square(op, "family operator");
    if (op.rows() != dim_) throw Error(ErrorCode::DimensionMismatch, "family operators differ in size");
    require_finite(op, "family operator");
  }
}

OperatorFamily OperatorFamily::zero(const MeasureSpace& space, Index dim) {
  return OperatorFamily(space, std::vector<LinOp>(space.size(), LinOp::Zero(dim, dim)));
}

OperatorFamily OperatorFamily::constant(const MeasureSpace& space, const LinOp& op) {
  return OperatorFamily(space, std::vector<LinOp>(space.size(), op));
}

OperatorFamily OperatorFamily::compose_right(const LinOp& T) const {
  require_square(T, "right factor");
  if (T.rows() != dim_) throw Error(ErrorCode::DimensionMismatch, "right factor size");
  std::vector<LinOp> out;
  out.reserve(ops_.size());
  for (const auto& op : ops_) out.push_back(op * T);
  return OperatorFamily(space_, std::move(out));
}

OperatorFamily OperatorFamily::scaled(Scalar c) const {
  std::vector<LinOp> out;
  out.reserve(ops_.size());
  for (const auto& op : ops_) out.push_back(c * op);
  return OperatorFamily(space_, std::move(out));
}

OperatorFamily evaluate_family(const PolynomialFamily& p, const MeasureSpace& space) {
  if (p.coeffs.empty()) throw Error(ErrorCode::BadSpec, "polynomial family has no coefficients");
  require_square(p.coeffs.front(), "polynomial coefficient");
  const Index dim = p.coeffs.front().rows();
  for (const auto& c : p.coeffs) {
    require_square(c, "polynomial coefficient");
    if (c.rows() != dim) throw Error(ErrorCode::DimensionMismatch, "polynomial coefficients differ in size");
  }
  std::vector<LinOp> ops;
  ops.reserve(space.size());
  for (double w : space.nodes()) {
    // Horner
    LinOp acc = p.coeffs.back();
    for (std::size_t j = p.coeffs.size() - 1; j-- > 0;) acc = (w * acc + p.coeffs[j]).eval();
    ops.push_back(std::move(acc));
  }
  return OperatorFamily(space, std::move(ops));
}

L2Seq analysis_apply(const OperatorFamily& F, const Vector& x) {
  if (x.size() != F.dim()) throw Error(ErrorCode::DimensionMismatch, "analysis_apply");
  std::vector<Vector> out;
  out.reserve(F.size());
  for (const auto& op : F.ops()) out.push_back(op * x);
  return L2Seq(F.space(), std::move(out));
}

Vector synthesis_apply(const OperatorFamily& F, const L2Seq& s) {
  if (!(s.space() == F.space())) throw Error(ErrorCode::SpaceMismatch, "synthesis_apply");
  if (s.dim() != F.dim()) throw Error(ErrorCode::DimensionMismatch, "synthesis_apply");
  Vector out = Vector::Zero(F.dim());
  const auto& w = F.space().weights();
  for (std::size_t i = 0; i < F.size(); ++i) out += w[i] * (F[i].adjoint() * s[i]);
  return out;
}

LinOp weighted_gram(const MeasureSpace& space, const std::vector<LinOp>& ops) {
  if (ops.size() != space.size()) throw Error(ErrorCode::DimensionMismatch, "weighted_gram");
  const Index dim = ops.front().cols();
  LinOp S = LinOp::Zero(dim, dim);
  const auto& w = space.weights();
  for (std::size_t i = 0; i < ops.size(); ++i) {
    if (w[i] == 0.0) continue;
    S.noalias() += w[i] * (ops[i].adjoint() * ops[i]);
  }
  // Exact Hermitian symmetry; the summands are Hermitian up to roundoff.
  return 0.5 * (S + S.adjoint());
}

FrameOperatorResult frame_operator(const OperatorFamily& F, const ToleranceConfig& cfg) {
  FrameOperatorResult out{weighted_gram(F.space(), F.ops())};
  const double lo = lambda_min(out.S, cfg);
  if (lo < -cfg.psd_tol * (1.0 + op_norm(out.S))) {
    throw Error(ErrorCode::NotPSD, "frame operator lost positivity: " + std::to_string(lo));
  }
  return out;
}

double energy(const OperatorFamily& F, const Vector& x) {
  if (x.size() != F.dim()) throw Error(ErrorCode::DimensionMismatch, "energy");
  double sum = 0.0;
  const auto& w = F.space().weights();
  for (std::size_t i = 0; i < F.size(); ++i) sum += w[i] * (F[i] * x).squaredNorm();
  return sum;
}

}  // namespace kframe
