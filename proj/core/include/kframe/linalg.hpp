#pragma once

// Dense complex linear algebra used by every frame check: adjoints, norms,
// PSD square roots, pseudo-inverses and Loewner-order comparisons.

#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace kframe {

using Scalar = std::complex<double>;
using Vector = Eigen::VectorXcd;
using LinOp = Eigen::MatrixXcd;
using Index = Eigen::Index;

struct ToleranceConfig {
  double psd_tol = 1e-9;       // eigenvalue slack
  double residual_tol = 1e-8;  // factorization residual
  double rank_tol = 1e-12;     // relative singular-value cutoff

  void validate() const;
};

/// Inner product on H, linear in the first argument.
inline Scalar inner(const Vector& x, const Vector& y) { return y.dot(x); }

void require_square(const LinOp& T, std::string_view what);
void require_finite(const LinOp& T, std::string_view what);
void require_finite(const Vector& x, std::string_view what);
void require_same_dim(const LinOp& A, const LinOp& B, std::string_view what);

LinOp adjoint(const LinOp& T);

/// Largest singular value.
double op_norm(const LinOp& T);

/// Smallest singular value; values below rank_tol * sigma_max read as 0.
double min_singular(const LinOp& T, const ToleranceConfig& cfg = {});

/// (P + P*)/2 when P is self-adjoint up to psd_tol * (1 + ||P||).
/// Larger asymmetry raises NotSelfAdjoint.
LinOp hermitian_part(const LinOp& P, const ToleranceConfig& cfg = {});

/// Spectrum of a self-adjoint operator, ascending.
Eigen::VectorXd eigenvalues_hermitian(const LinOp& P, const ToleranceConfig& cfg = {});
double lambda_max(const LinOp& P, const ToleranceConfig& cfg = {});
double lambda_min(const LinOp& P, const ToleranceConfig& cfg = {});

LinOp psd_sqrt(const LinOp& S, const ToleranceConfig& cfg = {});

/// Moore-Penrose pseudo-inverse with singular values below rank_tol * sigma_max dropped.
LinOp pinv(const LinOp& T, const ToleranceConfig& cfg = {});

/// Orthonormal basis of range(T) from the SVD.
LinOp range_basis(const LinOp& T, const ToleranceConfig& cfg = {});

struct LoewnerResult {
  bool holds = false;
  double margin = 0.0;            // lambda_min(Q - P)
  std::optional<Vector> witness;  // unit x with <Px,x> > <Qx,x> when !holds
};

/// P <= Q in the Loewner order, i.e. Q - P is PSD up to psd_tol * (1 + ||P|| + ||Q||).
LoewnerResult loewner_leq(const LinOp& P, const LinOp& Q, const ToleranceConfig& cfg = {});

/// Rayleigh quotient <Px,x>/<x,x> (real part).
double rayleigh(const LinOp& P, const Vector& x);

struct PencilExtreme {
  // sup over x with Mx != 0 of <Mx,x>/<Sx,x>; empty when M does not vanish on
  // ker(S), i.e. when no finite constant c gives M <= c S.
  std::optional<double> ratio;
  // Unit vector attaining the sup, or a vector in ker(S) that M sees when ratio is empty.
  Vector witness;
};

/// Extreme of the PSD pencil (M, S): the smallest c with M <= c S.
/// The computation is restricted to range(S) and exact when M vanishes on ker(S).
PencilExtreme pencil_sup(const LinOp& M, const LinOp& S, const ToleranceConfig& cfg = {});

}  // namespace kframe
