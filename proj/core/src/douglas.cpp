#include "kframe/douglas.hpp"

#include <cmath>

#include "kframe/error.hpp"

namespace kframe {

namespace {

void require_pair(const LinOp& K, const LinOp& T) {
  require_square(K, "K");
  require_square(T, "T");
  require_same_dim(K, T, "douglas");
  require_finite(K, "K");
  require_finite(T, "T");
}

double residual_bound(const LinOp& K, const ToleranceConfig& cfg) {
  return cfg.residual_tol * (1.0 + op_norm(K));
}

}  // namespace

bool range_inclusion(const LinOp& K, const LinOp& T, const ToleranceConfig& cfg) {
  require_pair(K, T);
  const LinOp projected = T * (pinv(T, cfg) * K);
  return op_norm(projected - K) <= residual_bound(K, cfg);
}

std::optional<double> majorization_factor(const LinOp& K, const LinOp& T, const ToleranceConfig& cfg) {
  require_pair(K, T);
  // The pencil (KK*, TT*) on range(T) has top value ||pinv(T) K||^2. Working
  // with T rather than TT* avoids squaring its condition number.
  const LinOp Q = pinv(T, cfg) * K;
  if (op_norm(T * Q - K) > residual_bound(K, cfg)) return std::nullopt;
  return op_norm(Q);
}

DouglasFactor douglas_factor(const LinOp& K, const LinOp& T, const ToleranceConfig& cfg) {
  require_pair(K, T);
  DouglasFactor out;
  out.Q = pinv(T, cfg) * K;
  out.residual = op_norm(T * out.Q - K);
  return out;
}

DouglasReport douglas_report(const LinOp& K, const LinOp& T, const ToleranceConfig& cfg) {
  DouglasReport out;
  out.range_included = range_inclusion(K, T, cfg);
  out.lambda_min_factor = majorization_factor(K, T, cfg);
  auto f = douglas_factor(K, T, cfg);
  out.Q = std::move(f.Q);
  out.residual = f.residual;
  out.factor_ok = out.residual <= residual_bound(K, cfg);
  return out;
}

}  // namespace kframe
