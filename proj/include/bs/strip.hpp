#pragma once

#include <cstdint>
#include <vector>

#include "bs/projections.hpp"
#include "bs/word_length.hpp"

namespace bs::boundary {

// One b-coset along the recorded geodesic between two boundary ends,
// with everything the counting routines need precomputed.
struct CosetCell {
  std::int64_t t = 0;      // signed strip coordinate; minus side < 0
  std::int64_t depth = 0;  // tree distance from the base vertex
  std::int64_t level = 0;
  Rat A;  // vertical scale of the coset prefix (hyperbolic classes)
  Rat B;
  int sign = 1;
  Int ex;  // horizontal offset of the prefix (equal-modulus class)
  int esign = 1;
  std::int64_t edge_letters = 0;  // letters of the witness reaching this coset
  Int corr;                       // trailing b-correction of that witness
};

struct Strip {
  core::Presentation pres;
  proj::TreeEnd minus, plus;
  std::size_t branch_depth = 0;
  bool has_rplus = false;
  Rat r_plus;
  std::vector<CosetCell> cells;  // ascending t
  std::int64_t t_min = 0, t_max = 0;

  const CosetCell& cell_at(std::int64_t t) const;
};

Strip build_strip(const proj::TreeEnd& minus, const proj::TreeEnd& plus);
Strip build_strip(const proj::TreeEnd& minus, const proj::TreeEnd& plus,
                  const Rat& r_plus);

struct StripLocate {
  bool on_path = false;
  bool truncated = false;  // agrees with a branch past the recorded window
  std::int64_t t = 0;
};

StripLocate locate_coset(const Strip& s, const core::NormalForm& g);

// Trailing powers minimizing the horizontal distance to the target line
// (one integer, or two at an exact tie).
std::vector<Int> horizontal_minimizers(const Strip& s, const CosetCell& cell);

bool strip_member(const Strip& s, const core::NormalForm& g);

enum class GaugeMode { WordBall, ZeroDrift, EqualAbs };

bool gauge_member(const core::NormalForm& g, GaugeMode mode, std::int64_t k,
                  int bfs_cap = 10);

struct GaugeIndex {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
};

// Smallest gauge index whose set contains g; an interval when the word
// length only resolves to bounds.
GaugeIndex gauge_index(const core::NormalForm& g, GaugeMode mode, int bfs_cap = 10);

struct StripCount {
  std::int64_t k = 0;
  Int count_lo, count_hi;  // exact bracket on |strip ∩ gauge(k)|
  Int bound;               // proved ceiling
  bool bound_ok = false;
};

StripCount strip_gauge_count(const Strip& s, GaugeMode mode, std::int64_t k,
                             int bfs_cap = 6);

}  // namespace bs::boundary
