#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bs/geometry.hpp"
#include "bs/walk.hpp"

namespace bs::boundary {

using core::Presentation;

// --- tree-boundary convergence ------------------------------------------

struct ConvergenceRow {
  std::uint64_t stream = 0;
  std::int64_t stabilized_at = -1;  // first checkpoint from which the prefix is final
  bool escaped = false;             // final depth reached the prefix depth
  std::int64_t final_depth = 0;
};

struct ConvergenceReport {
  int prefix_depth = 0;
  std::vector<std::int64_t> schedule;
  std::vector<ConvergenceRow> rows;
  std::vector<double> frac_stable;  // per schedule entry
  double final_fraction = 0;        // stable and escaped by the last checkpoint
};

class ConvergenceAgg {
 public:
  explicit ConvergenceAgg(int prefix_depth) : prefix_depth_(prefix_depth) {}
  void add(const walk::Trajectory& t);
  ConvergenceReport finalize() const;

 private:
  int prefix_depth_;
  std::vector<std::int64_t> schedule_;
  std::vector<ConvergenceRow> rows_;
};

// --- hyperbolic-plane limit behaviour ------------------------------------

struct HypLimitRow {
  std::uint64_t stream = 0;
  std::int64_t lambda_final = 0;
  double ln_A_final = 0;
  double residual_half = 0;  // |B(T) - B(T/2)|, drift < 0 only
  double abs_B_final = 0;
};

struct HypLimitReport {
  int drift_sign = 0;
  std::vector<HypLimitRow> rows;
  double frac_ln_A_above(double threshold) const;
  double frac_residual_below(double eps) const;
  double median_abs_B() const;
};

class HypLimitAgg {
 public:
  HypLimitAgg(const Presentation& pres, int drift_sign);
  void add(const walk::Trajectory& t);
  HypLimitReport finalize() const;

 private:
  Presentation pres_;
  int drift_sign_;
  double ln_ratio_;
  std::vector<HypLimitRow> rows_;
};

// --- escape speed ----------------------------------------------------------

struct SpeedReport {
  std::vector<std::int64_t> ns;
  std::vector<double> q25, median, q75;
};

class SpeedAgg {
 public:
  explicit SpeedAgg(const Presentation& pres);
  void add(const walk::Trajectory& t);
  SpeedReport finalize() const;

 private:
  Presentation pres_;
  std::vector<std::int64_t> ns_;
  std::vector<std::vector<double>> samples_;  // per checkpoint
};

// --- record-time tail -------------------------------------------------------

struct LadderTailReport {
  std::vector<std::int64_t> ks;
  std::vector<double> survival;
  double slope = 0;  // least-squares slope of ln S against ln k
  std::size_t gap_count = 0;
};

class LadderAgg {
 public:
  LadderAgg(std::int64_t steps, std::int64_t k_min, std::int64_t k_max);
  void add(const walk::Trajectory& t);  // needs the dense level track
  LadderTailReport finalize(int grid_points = 24) const;

 private:
  std::int64_t steps_, k_min_, k_max_;
  std::vector<std::int64_t> gaps_;  // censor-free; k_max_+1 marks an open gap
};

// --- boundary hitting histogram ---------------------------------------------

struct HittingCell {
  std::string prefix;
  std::uint64_t count = 0;
};

struct HittingReport {
  int depth = 0;
  std::uint64_t total = 0;
  std::vector<std::vector<HittingCell>> by_depth;  // index d-1: histogram at depth d
  bool refinement_consistent = true;
  std::vector<double> max_mass;    // per depth
  std::size_t depth1_zero_cells = 0;
  std::size_t depth1_possible = 0;
};

HittingReport hitting_histogram(const Presentation& pres,
                                const std::vector<proj::TreeEnd>& ends, int depth);

}  // namespace bs::boundary
