#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>

namespace pcasim {

/// SplitMix64 finalizer: the bijective 64-bit mix used for seeding.
std::uint64_t splitmix64(std::uint64_t& state);

/// Child seed for stream `index` of `seed`:
///   state = seed + 0x9E3779B97F4A7C15 * (index + 1); return splitmix64(state)
/// Chaining derive_seed over a list of tags gives each trial of each grid
/// cell its own stream, independent of execution order.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

/// xoshiro256** seeded by four successive splitmix64 outputs of `seed`.
/// Normal variates come from the Box-Muller transform; both values of each
/// pair are used, cosine branch first. Uniforms are (x >> 11) * 2^-53.
/// This generator is part of the reproducibility contract: changing any
/// detail changes every experiment output.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  Eigen::MatrixXd normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::array<std::uint64_t, 4> state_{};
  std::optional<double> spare_;
};

/// M^T M + 0.1 I with M a d x d matrix of standard normals.
Eigen::MatrixXd random_spd_covariance(Rng& rng, Eigen::Index d);

/// n draws from N(0, covariance), one per row.
Eigen::MatrixXd sample_mvn(Rng& rng, const Eigen::MatrixXd& covariance, Eigen::Index n);

}  // namespace pcasim
