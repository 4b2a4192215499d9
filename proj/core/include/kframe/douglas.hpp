#pragma once

// Range inclusion, majorization and factorization for a pair (K, T).

#include <optional>

#include "kframe/linalg.hpp"

namespace kframe {

/// range(K) within range(T), tested through the projector T pinv(T).
bool range_inclusion(const LinOp& K, const LinOp& T, const ToleranceConfig& cfg = {});

/// Smallest lambda >= 0 with KK* <= lambda^2 TT*, or empty when none exists.
std::optional<double> majorization_factor(const LinOp& K, const LinOp& T,
                                          const ToleranceConfig& cfg = {});

struct DouglasFactor {
  LinOp Q;  // minimal-norm solution pinv(T) K
  double residual = 0.0;
};

DouglasFactor douglas_factor(const LinOp& K, const LinOp& T, const ToleranceConfig& cfg = {});

struct DouglasReport {
  bool range_included = false;
  std::optional<double> lambda_min_factor;
  LinOp Q;
  double residual = 0.0;
  bool factor_ok = false;  // residual <= residual_tol (1 + ||K||)

  bool consistent() const noexcept {
    return range_included == lambda_min_factor.has_value() && range_included == factor_ok;
  }
};

DouglasReport douglas_report(const LinOp& K, const LinOp& T, const ToleranceConfig& cfg = {});

}  // namespace kframe
