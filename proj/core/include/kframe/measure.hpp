#pragma once

// Finite discretizations of a measure space and the weighted l2(Omega, H)
// inner product built on them.

#include <cstddef>
#include <vector>

#include "kframe/linalg.hpp"

namespace kframe {

enum class QuadratureKind { Midpoint, Simpson, Explicit };

struct QuadratureSpec {
  QuadratureKind kind = QuadratureKind::Simpson;
  double lo = 0.0;
  double hi = 1.0;
  std::size_t n = 3;
  std::vector<double> explicit_nodes;
  std::vector<double> explicit_weights;

  bool operator==(const QuadratureSpec&) const = default;
};

/// Quadrature nodes with nonnegative weights, at least one of them positive.
/// Nodes may repeat and need not be sorted.
class MeasureSpace {
 public:
  MeasureSpace(std::vector<double> nodes, std::vector<double> weights);

  std::size_t size() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  double node(std::size_t i) const { return nodes_.at(i); }
  double weight(std::size_t i) const { return weights_.at(i); }
  double total_mass() const noexcept;

  bool operator==(const MeasureSpace&) const = default;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

MeasureSpace quadrature_build(const QuadratureSpec& spec);

/// An element x = (x_w) of l2(Omega, H), one vector per node.
class L2Seq {
 public:
  L2Seq(MeasureSpace space, std::vector<Vector> elements);

  static L2Seq zero(const MeasureSpace& space, Index dim);

  const MeasureSpace& space() const noexcept { return space_; }
  const std::vector<Vector>& elements() const noexcept { return elements_; }
  const Vector& operator[](std::size_t i) const { return elements_.at(i); }
  Index dim() const noexcept { return dim_; }

  /// Node-major stacking into a single vector of length size() * dim().
  Vector stacked() const;

 private:
  MeasureSpace space_;
  std::vector<Vector> elements_;
  Index dim_ = 0;
};

Scalar l2_inner(const L2Seq& x, const L2Seq& y);
double l2_norm(const L2Seq& x);

/// Scalar sequence {a_w} sampled at the nodes.
class ScalarSequence {
 public:
  ScalarSequence(MeasureSpace space, std::vector<Scalar> values);
  ScalarSequence(MeasureSpace space, const std::vector<double>& values);

  const MeasureSpace& space() const noexcept { return space_; }
  const std::vector<Scalar>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Scalar operator[](std::size_t i) const { return values_.at(i); }

 private:
  MeasureSpace space_;
  std::vector<Scalar> values_;
};

struct Confinement {
  bool confined = false;
  double inf = 0.0;
  double sup = 0.0;
};

/// 0 < inf <= sup < inf over the node values; non-real entries raise NonRealSequence.
Confinement positively_confined_check(const ScalarSequence& s);

}  // namespace kframe
