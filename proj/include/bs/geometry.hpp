#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bs/projections.hpp"
#include "bs/word_length.hpp"

namespace bs::geom {

using core::NormalForm;
using core::Presentation;
using proj::EuclidPoint;
using proj::HypPoint;
using proj::TreeEnd;
using proj::TreeVertex;

struct MetricConstants {
  double ell_a;      // vertical step ln(|q|/p)
  double ell_b;      // horizontal step ln((3+sqrt 5)/2)
  long long c;       // floor((p+|q|+2)/2), reverse-comparison constant
  double ell_max() const { return ell_a > ell_b ? ell_a : ell_b; }
};

MetricConstants metric_constants(const Presentation& pres);

double d_hyp(const HypPoint& z1, const HypPoint& z2);
double d_eucl(const EuclidPoint& u, const EuclidPoint& v);
std::int64_t d_tree(const TreeVertex& u, const TreeVertex& v);
double d_ends(const TreeEnd& x, const TreeEnd& y);

// Ascending bi-infinite path through the base vertex, recorded as up-shifts
// for positive levels and down-shifts for negative ones.
struct PlanePath {
  Presentation pres;
  std::vector<int> up_shifts;    // edge from level i to i+1 uses up_shifts[i]
  std::vector<int> down_shifts;  // edge from level -i to -i-1 uses down_shifts[i]

  std::int64_t level_min() const { return -static_cast<std::int64_t>(down_shifts.size()); }
  std::int64_t level_max() const { return static_cast<std::int64_t>(up_shifts.size()); }
};

PlanePath make_plane_path(const Presentation& pres, std::vector<int> up_shifts,
                          std::vector<int> down_shifts);
TreeVertex plane_vertex(const PlanePath& path, std::int64_t lvl);
bool plane_contains(const PlanePath& path, const NormalForm& g);

std::int64_t plane_distance(const PlanePath& path, const NormalForm& g,
                            const NormalForm& h, int cap = 64);

struct BilipschitzRow {
  std::int64_t d_plane;
  double d_hyp;
  double ratio;  // d_plane / d_hyp
};

struct BilipschitzReport {
  std::vector<BilipschitzRow> rows;
  std::size_t pairs = 0;
  std::size_t forward_violations = 0;  // d_hyp > ell_max * d_plane + tol
  double max_ratio = 0.0;              // empirical reverse constant
};

BilipschitzReport bilipschitz_audit(const PlanePath& path, int radius);

// Cayley-graph ball sizes by radius, 0..radius.
std::vector<std::uint64_t> ball_growth(const Presentation& pres, int radius, int cap = 12);

// Unit-disc image (z - i)/(z + i) of a half-plane point.
std::pair<double, double> cayley_transform(const Rat& re, const Rat& im);
std::pair<double, double> cayley_transform(const HypPoint& z);

// Number of elements b^k of the base horosphere within half-plane distance n.
Int horosphere_count(const Presentation& pres, double n);

}  // namespace bs::geom
