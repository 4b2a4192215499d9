#include "kframe/random.hpp"

namespace kframe {

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

Rng::Rng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  engine_.seed(seq);
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::size_t Rng::uniform_int(std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(engine_);
}

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

bool Rng::bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }

LinOp Rng::gaussian(Index rows, Index cols, bool complex) {
  LinOp out(rows, cols);
  // column-major fill order is part of the replay contract
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal();
      const double im = complex ? normal() : 0.0;
      out(i, j) = Scalar(re, im);
    }
  }
  return out;
}

Vector Rng::gaussian_vector(Index n, bool complex) { return gaussian(n, 1, complex).col(0); }

LinOp random_rank(Rng& rng, Index n, Index rank, bool complex) {
  if (rank <= 0) return LinOp::Zero(n, n);
  return rng.gaussian(n, rank, complex) * rng.gaussian(rank, n, complex);
}

}  // namespace kframe
