#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bs/measure.hpp"

namespace bs::walk {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// xoshiro256**; one independent stream per trajectory, derived from the
// master seed and the trajectory index so runs are reproducible in any order.
class Xoshiro256ss {
 public:
  static Xoshiro256ss seeded(std::uint64_t master_seed, std::uint64_t stream);

  std::uint64_t next();
  std::uint64_t next_below(std::uint64_t n);
  Int next_below_int(const Int& n);

 private:
  std::uint64_t s_[4];
};

// Exact inverse-CDF sampling: an integer uniform below the common denominator
// picks the atom, so atom frequencies match the weights exactly.
class Sampler {
 public:
  explicit Sampler(const Measure& m);
  std::size_t draw(Xoshiro256ss& rng) const;

 private:
  Int denom_;
  std::vector<Int> cum_;
  bool small_ = false;
  std::uint64_t denom64_ = 0;
  std::vector<std::uint64_t> cum64_;
};

struct Checkpoint {
  std::int64_t n = 0;
  std::int64_t lambda = 0;
  int sign = 1;
  bool has_B = false;
  Rat B;
  bool has_x = false;
  Int x;
  std::int64_t tree_depth = -1;
  std::string tree_prefix;  // edge path truncated to the configured depth
  std::string nf;           // full normal form, only when stored
};

struct WalkConfig {
  std::int64_t steps = 0;
  std::vector<std::int64_t> checkpoints;  // ascending; always ends at steps
  int prefix_depth = 8;
  bool track_scalar = true;
  bool track_tree = true;
  bool store_nf = false;
  bool store_increments = false;
  bool dense_lambda = true;
};

struct Trajectory {
  std::uint64_t stream = 0;
  std::vector<std::uint32_t> increments;
  std::vector<std::int64_t> lambda;  // lambda[k] after k steps, if dense
  std::vector<Checkpoint> cps;
  std::optional<core::NormalForm> final_nf;
};

// 1, 2, 5, 10, ... up to steps, plus steps/2 and steps.
std::vector<std::int64_t> geometric_checkpoints(std::int64_t steps);

Trajectory run_trajectory(const Measure& m, const Sampler& sampler,
                          std::uint64_t master_seed, std::uint64_t stream,
                          const WalkConfig& cfg);

// Same folds driven by a recorded increment sequence (offline replay).
Trajectory replay_trajectory(const Measure& m, const std::vector<std::uint32_t>& incs,
                             const WalkConfig& cfg);

// Strictly-increasing record times of the level track (tau_0 = 0 at index 0).
std::vector<std::int64_t> ladder_times(const std::vector<std::int64_t>& lambda_track);

// Truncated edge-path serialization of the tree position, without copying
// the normal form.
std::string tree_prefix_string(const core::NormalForm& g, int depth_cap);

}  // namespace bs::walk
