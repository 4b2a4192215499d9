#pragma once

#include <initializer_list>
#include <random>

#include <gtest/gtest.h>

#include "kframe/error.hpp"
#include "kframe/family.hpp"
#include "kframe/measure.hpp"
#include "oracles.hpp"

namespace fixture {

using namespace kframe;

inline LinOp diag(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Index>(d.size()));
  Index i = 0;
  for (double x : d) v(i++) = x;
  return v.cast<Scalar>().asDiagonal();
}

inline MeasureSpace simpson3() { return quadrature_build({QuadratureKind::Simpson, 0.0, 1.0, 3, {}, {}}); }

inline MeasureSpace unit_point() { return MeasureSpace({0.0}, {1.0}); }

/// Lambda_w = diag(w, w/2) on Simpson's three nodes: S = diag(1/3, 1/12).
inline OperatorFamily worked_family() {
  return evaluate_family({{LinOp::Zero(2, 2), diag({1.0, 0.5})}}, simpson3());
}

inline LinOp worked_K(double lambda = 1.0) { return diag({lambda / 2, lambda / 4}); }

inline MeasureSpace random_space(std::mt19937_64& rng, std::size_t nodes) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  std::vector<double> w, x;
  for (std::size_t i = 0; i < nodes; ++i) {
    x.push_back(static_cast<double>(i) / static_cast<double>(nodes));
    w.push_back(u(rng));
  }
  return MeasureSpace(x, w);
}

inline OperatorFamily random_family(std::mt19937_64& rng, const MeasureSpace& space, Index n) {
  std::vector<LinOp> ops;
  for (std::size_t i = 0; i < space.size(); ++i) ops.push_back(oracle::random_matrix(rng, n));
  return OperatorFamily(space, ops);
}

}  // namespace fixture

#define EXPECT_KFRAME_ERROR(stmt, err_code)                         \
  do {                                                              \
    try {                                                           \
      (void)(stmt);                                                 \
      ADD_FAILURE() << "expected " #err_code;                       \
    } catch (const ::kframe::Error& e_) {                           \
      EXPECT_EQ(e_.code(), ::kframe::ErrorCode::err_code) << e_.what(); \
    }                                                               \
  } while (0)
