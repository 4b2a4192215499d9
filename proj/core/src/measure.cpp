#include "kframe/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kframe/error.hpp"

namespace kframe {

MeasureSpace::MeasureSpace(std::vector<double> nodes, std::vector<double> weights)
    : nodes_(std::move(nodes)), weights_(std::move(weights)) {
  if (nodes_.empty()) throw Error(ErrorCode::BadSpec, "measure space needs at least one node");
  if (nodes_.size() != weights_.size()) {
    throw Error(ErrorCode::BadSpec, "node and weight lists differ in length (" +
                                        std::to_string(nodes_.size()) + " vs " +
                                        std::to_string(weights_.size()) + ")");
  }
  bool any_positive = false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(weights_[i])) {
      throw Error(ErrorCode::BadSpec, "non-finite node or weight at index " + std::to_string(i));
    }
    if (weights_[i] < 0.0) {
      throw Error(ErrorCode::BadSpec, "negative weight at index " + std::to_string(i));
    }
    any_positive = any_positive || weights_[i] > 0.0;
  }
  if (!any_positive) throw Error(ErrorCode::BadSpec, "all weights are zero");
}

double MeasureSpace::total_mass() const noexcept {
  double sum = 0.0;
  for (double w : weights_) sum += w;
  return sum;
}

MeasureSpace quadrature_build(const QuadratureSpec& spec) {
  if (spec.kind == QuadratureKind::Explicit) {
    return MeasureSpace(spec.explicit_nodes, spec.explicit_weights);
  }
  if (!std::isfinite(spec.lo) || !std::isfinite(spec.hi) || !(spec.hi > spec.lo)) {
    throw Error(ErrorCode::BadSpec, "interval must satisfy lo < hi");
  }
  const double len = spec.hi - spec.lo;
  std::vector<double> nodes(spec.n), weights(spec.n);
  if (spec.kind == QuadratureKind::Midpoint) {
    if (spec.n < 1) throw Error(ErrorCode::BadSpec, "midpoint rule needs n >= 1");
    const double h = len / static_cast<double>(spec.n);
    for (std::size_t i = 0; i < spec.n; ++i) {
      nodes[i] = spec.lo + (static_cast<double>(i) + 0.5) * h;
      weights[i] = h;
    }
    return MeasureSpace(std::move(nodes), std::move(weights));
  }
  if (spec.n < 3 || spec.n % 2 == 0) {
    throw Error(ErrorCode::BadSpec, "composite Simpson rule needs odd n >= 3");
  }
  const double h = len / static_cast<double>(spec.n - 1);
  for (std::size_t i = 0; i < spec.n; ++i) {
    nodes[i] = (i + 1 == spec.n) ? spec.hi : spec.lo + static_cast<double>(i) * h;
    double c = (i == 0 || i + 1 == spec.n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    weights[i] = c * h / 3.0;
  }
  return MeasureSpace(std::move(nodes), std::move(weights));
}

L2Seq::L2Seq(MeasureSpace space, std::vector<Vector> elements)
    : space_(std::move(space)), elements_(std::move(elements)) {
  if (elements_.size() != space_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "sequence length " +
                                                  std::to_string(elements_.size()) +
                                                  " does not match node count " +
                                                  std::to_string(space_.size()));
  }
  dim_ = elements_.front().size();
  if (dim_ == 0) throw Error(ErrorCode::DimensionMismatch, "sequence elements are empty");
  for (const auto& e : elements_) {
    if (e.size() != dim_) throw Error(ErrorCode::DimensionMismatch, "ragged sequence elements");
    require_finite(e, "sequence element");
  }
}

L2Seq L2Seq::zero(const MeasureSpace& space, Index dim) {
  return L2Seq(space, std::vector<Vector>(space.size(), Vector::Zero(dim)));
}

Vector L2Seq::stacked() const {
  Vector out(static_cast<Index>(elements_.size()) * dim_);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    out.segment(static_cast<Index>(i) * dim_, dim_) = elements_[i];
  }
  return out;
}

Scalar l2_inner(const L2Seq& x, const L2Seq& y) {
  if (!(x.space() == y.space())) throw Error(ErrorCode::SpaceMismatch, "l2_inner");
  if (x.dim() != y.dim()) throw Error(ErrorCode::DimensionMismatch, "l2_inner");
  Scalar sum = 0.0;
  const auto& w = x.space().weights();
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * inner(x[i], y[i]);
  return sum;
}

double l2_norm(const L2Seq& x) {
  return std::sqrt(std::max(l2_inner(x, x).real(), 0.0));
}

ScalarSequence::ScalarSequence(MeasureSpace space, std::vector<Scalar> values)
    : space_(std::move(space)), values_(std::move(values)) {
  if (values_.size() != space_.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scalar sequence length " +
                                                  std::to_string(values_.size()) +
                                                  " does not match node count " +
                                                  std::to_string(space_.size()));
  }
  for (const auto& v : values_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::NonFinite, "scalar sequence has non-finite values");
    }
  }
}

ScalarSequence::ScalarSequence(MeasureSpace space, const std::vector<double>& values)
    : ScalarSequence(std::move(space), std::vector<Scalar>(values.begin(), values.end())) {}

Confinement positively_confined_check(const ScalarSequence& s) {
  Confinement out;
  out.inf = s[0].real();
  out.sup = s[0].real();
  for (const auto& v : s.values()) {
    if (v.imag() != 0.0) throw Error(ErrorCode::NonRealSequence, "sequence has complex values");
    out.inf = std::min(out.inf, v.real());
    out.sup = std::max(out.sup, v.real());
  }
  out.confined = out.inf > 0.0;
  return out;
}

}  // namespace kframe
