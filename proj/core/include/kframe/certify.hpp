#pragma once

// Frame / Bessel / tight / Parseval certification of a family against a
// target operator K, with optimal bounds computed as pencil extremes.

#include <optional>
#include <string_view>

#include "kframe/family.hpp"
#include "kframe/linalg.hpp"

namespace kframe {

enum class FrameStatus {
  KFrame,
  BesselOnly,
  NotBessel,  // unreachable in finite dimension, kept for report stability
  Degenerate, // K = 0: the lower inequality is vacuous
};

std::string_view to_string(FrameStatus status) noexcept;

/// Outcome of certifying A ||K*x||^2 <= sum_i w_i ||Lambda_i x||^2 <= B ||x||^2.
///
/// A_opt is the largest admissible lower constant (0 for a Bessel-only family,
/// +inf for K = 0) and B_opt the smallest admissible upper constant. The
/// witnesses attain the extreme Rayleigh ratios <Sx,x>/<KK*x,x> and <Sx,x>/<x,x>.
struct FrameCertificate {
  FrameStatus status = FrameStatus::Degenerate;
  double A_opt = 0.0;
  double B_opt = 0.0;
  bool tight = false;
  bool parseval = false;
  bool verified = false;  // A_opt KK* <= S <= B_opt I passed loewner_leq
  Vector lower_witness;
  Vector upper_witness;

  /// A_opt when the certificate is a genuine K-frame certificate, else 0.
  double usable_lower() const noexcept { return status == FrameStatus::KFrame ? A_opt : 0.0; }
};

bool is_zero_operator(const LinOp& T, const ToleranceConfig& cfg = {});

double bessel_bound(const OperatorFamily& F, const ToleranceConfig& cfg = {});

struct LowerBound {
  double A_opt = 0.0;
  Vector witness;
};

/// Largest A with A KK* <= S. Raises ZeroK when K = 0.
LowerBound k_frame_lower_bound(const OperatorFamily& F, const LinOp& K,
                               const ToleranceConfig& cfg = {});
double k_frame_lower(const OperatorFamily& F, const LinOp& K, const ToleranceConfig& cfg = {});

FrameCertificate certify_k_frame(const OperatorFamily& F, const LinOp& K,
                                 const ToleranceConfig& cfg = {});

struct BoundCheck {
  bool lower_ok = false;
  bool upper_ok = false;
  std::optional<Vector> lower_witness;
  std::optional<Vector> upper_witness;

  bool ok() const noexcept { return lower_ok && upper_ok; }
};

/// lower * TT* <= S and S <= upper * I, each through loewner_leq.
BoundCheck verify_k_frame_bounds(const LinOp& S, const LinOp& target, double lower, double upper,
                                 const ToleranceConfig& cfg = {});

/// The three equivalent statements for a Bessel family:
///   (1) A_opt > 0 from the pencil,
///   (2) A KK* <= S for the constant A = 1/||L||^2 suggested by the factorization,
///   (3) K = S^{1/2} L with L = pinv(S^{1/2}) K up to residual_tol.
struct MajorizationReport {
  bool vacuous = false;  // K = 0
  bool has_A = false;
  double A = 0.0;
  bool majorized = false;
  LinOp L;
  double residual = 0.0;
  bool factorizable = false;

  bool agree() const noexcept { return has_A == majorized && majorized == factorizable; }
};

MajorizationReport majorization_equivalence(const OperatorFamily& F, const LinOp& K,
                                            const ToleranceConfig& cfg = {});

struct OrdinaryFrameReport {
  bool is_ordinary_frame = false;
  double alpha = 0.0;  // smallest singular value of K
  double lower = 0.0;
  double upper = 0.0;
  bool certified = false;
};

/// A K-frame with surjective K is an ordinary frame with bounds (alpha^2 A, B).
OrdinaryFrameReport surjective_reduction(const OperatorFamily& F, const LinOp& K,
                                         const FrameCertificate& cert,
                                         const ToleranceConfig& cfg = {});

struct TightDualReport {
  bool is_tight_K = false;
  double A = 0.0;
  bool is_tight_ordinary = false;
  double B = 0.0;
  bool duality_holds = false;  // K ((A/B) K*) == I
  bool biconditional_holds = false;
};

TightDualReport tight_dual_check(const OperatorFamily& F, const LinOp& K,
                                 const ToleranceConfig& cfg = {});

}  // namespace kframe
