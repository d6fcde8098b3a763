#pragma once

// Deterministic random streams. The engine is std::mt19937_64 seeded through
// std::seed_seq; both algorithms are fixed by the C++ standard, so a given
// (seed, stream) yields the same bits on every conforming platform. Uniform
// and Gaussian draws are computed here rather than through <random>
// distributions, whose algorithms are implementation-defined.

#include <cstdint>
#include <optional>
#include <random>

#include "glgp/graph.hpp"

namespace glgp {

class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_; }

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n), unbiased by rejection.
  std::uint64_t uniform_index(std::uint64_t n);
  /// Standard normal by Box-Muller; the second variate is cached.
  double normal();
  MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

  /// Independent child stream for (tag, index), e.g. (fraction, trial).
  RngStream child(std::uint64_t tag, std::uint64_t index = 0) const;

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

/// SplitMix64 finalizer; used to derive stream ids.
std::uint64_t mix64(std::uint64_t x);

}  // namespace glgp
