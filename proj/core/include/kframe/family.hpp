#pragma once

// Operator families {Lambda_w} sampled on a measure space, with the
// analysis operator R, its adjoint R* and the frame operator S = R*R.

#include <vector>

#include "kframe/linalg.hpp"
#include "kframe/measure.hpp"

namespace kframe {

class OperatorFamily {
 public:
  OperatorFamily(MeasureSpace space, std::vector<LinOp> ops);

  static OperatorFamily zero(const MeasureSpace& space, Index dim);
  static OperatorFamily constant(const MeasureSpace& space, const LinOp& op);

  const MeasureSpace& space() const noexcept { return space_; }
  const std::vector<LinOp>& ops() const noexcept { return ops_; }
  const LinOp& operator[](std::size_t i) const { return ops_.at(i); }
  std::size_t size() const noexcept { return ops_.size(); }
  Index dim() const noexcept { return dim_; }

  /// {Lambda_w T}
  OperatorFamily compose_right(const LinOp& T) const;
  /// {c Lambda_w}
  OperatorFamily scaled(Scalar c) const;

 private:
  MeasureSpace space_;
  std::vector<LinOp> ops_;
  Index dim_ = 0;
};

/// Lambda_w = sum_j w^j C_j.
struct PolynomialFamily {
  std::vector<LinOp> coeffs;
};

OperatorFamily evaluate_family(const PolynomialFamily& p, const MeasureSpace& space);

L2Seq analysis_apply(const OperatorFamily& F, const Vector& x);
Vector synthesis_apply(const OperatorFamily& F, const L2Seq& s);

struct FrameOperatorResult {
  LinOp S;  // self-adjoint PSD
};

FrameOperatorResult frame_operator(const OperatorFamily& F, const ToleranceConfig& cfg = {});

/// sum_i w_i ||Lambda_i x||^2
double energy(const OperatorFamily& F, const Vector& x);

/// sum_i w_i A_i* A_i for per-node operators; shared by the frame operator
/// and the perturbation quadratic forms.
LinOp weighted_gram(const MeasureSpace& space, const std::vector<LinOp>& ops);

}  // namespace kframe
