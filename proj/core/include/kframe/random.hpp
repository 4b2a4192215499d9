#pragma once

// Seeded generators for fuzz instances. Every instance gets its own engine
// derived from (seed, stream, index), so instances can be replayed one at a
// time and in any order.

#include <cstdint>
#include <random>

#include "kframe/linalg.hpp"

namespace kframe {

class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

  double uniform(double lo, double hi);
  /// Uniform on [lo, hi], both ends included.
  std::size_t uniform_int(std::size_t lo, std::size_t hi);
  double normal();
  bool bernoulli(double p);

  /// Independent standard-normal entries; imaginary parts only when complex.
  LinOp gaussian(Index rows, Index cols, bool complex);
  Vector gaussian_vector(Index n, bool complex);

 private:
  std::mt19937_64 engine_;
};

/// Random matrix of the given rank (rank <= n).
LinOp random_rank(Rng& rng, Index n, Index rank, bool complex);

}  // namespace kframe
