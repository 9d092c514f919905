#pragma once

#include <cstdint>
#include <vector>

#include "bs/boundary.hpp"
#include "bs/strip.hpp"

namespace bs::expt {

using core::Presentation;

// One batch of independent trajectories of the same walk: streams
// 0..trajectories-1 under master_seed, each steps long.
struct WalkSetup {
  walk::Measure measure;
  std::uint64_t master_seed = 0;
  std::uint64_t trajectories = 0;
  std::int64_t steps = 0;
};

int drift_sign(const walk::Measure& m);

boundary::ConvergenceReport run_tree_convergence(const WalkSetup& s, int prefix_depth);

// Requires a nonzero drift (WrongDrift otherwise); the sign picks which
// residual diagnostics apply.
boundary::HypLimitReport run_hyp_limit(const WalkSetup& s);

boundary::SpeedReport run_speed(const WalkSetup& s);

boundary::LadderTailReport run_ladder(const WalkSetup& s, std::int64_t k_min,
                                      std::int64_t k_max, std::size_t min_obs);

boundary::HittingReport run_hitting(const WalkSetup& s, int depth);

struct EndSample {
  std::uint64_t stream = 0;
  proj::TreeEnd end;
  std::int64_t lambda_final = 0;
  bool has_B = false;
  Rat B_final;
};

// Long trajectories whose final tree positions stand in for boundary points.
std::vector<EndSample> sample_ends(const walk::Measure& m, std::uint64_t master_seed,
                                   std::uint64_t stream_base, std::uint64_t count,
                                   std::int64_t steps, bool with_scalar);

struct StripAuditRow {
  std::int64_t n = 0;
  boundary::GaugeIndex k;               // gauge index of Z_n (interval if unresolved)
  boundary::StripCount at_lo, at_hi;    // counts at both interval endpoints
  double ln_over_n = 0;                 // ln(max(1, count_hi at k.hi)) / n
};

struct StripAuditReport {
  boundary::GaugeMode mode;
  std::size_t branch_depth = 0;
  std::int64_t window = 0;  // cell radius the strip was materialized to
  std::vector<StripAuditRow> rows;
  bool all_bounds_ok = true;
};

// Audits the strip-intersection cardinalities of one trajectory (stream 0)
// against the proved per-mode ceilings, at every scheduled step count. The
// strip spans two ends sampled from the same walk with end_steps steps.
StripAuditReport run_strip_audit(const WalkSetup& s, boundary::GaugeMode mode,
                                 const std::vector<std::int64_t>& schedule,
                                 std::int64_t end_steps, int bfs_cap = 6);

// Offline variants fed from recorded checkpoints instead of live runs.
boundary::ConvergenceReport tree_convergence_from(const std::vector<walk::Trajectory>& ts,
                                                  int prefix_depth);
boundary::HypLimitReport hyp_limit_from(const std::vector<walk::Trajectory>& ts,
                                        const Presentation& pres, int sign);
boundary::SpeedReport speed_from(const std::vector<walk::Trajectory>& ts,
                                 const Presentation& pres);

}  // namespace bs::expt
