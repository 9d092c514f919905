#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "bs/normal_form.hpp"

namespace bs::core {

struct WordLengthBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  bool exact = false;

  std::int64_t value() const {
    if (!exact) fail(ErrorCode::OracleUnresolved, "word length not resolved exactly");
    return lower;
  }
};

// Memoized BFS ball over the generating set {a, a^-1, b, b^-1}, grown radius
// by radius. Shared across queries for one presentation.
class BallOracle {
 public:
  explicit BallOracle(const Presentation& pres);

  void grow_to(int radius);
  int radius_done() const { return radius_done_; }
  // Exact distance if the element lies inside the explored ball, else -1.
  std::int64_t lookup(const NormalForm& g) const;
  const std::vector<std::uint64_t>& growth() const { return growth_; }
  std::size_t size() const { return dist_.size(); }

  std::vector<NormalForm> elements_at(int radius) const;

 private:
  Presentation pres_;
  int radius_done_ = 0;
  std::unordered_map<NormalForm, int, NormalFormHash> dist_;
  std::vector<NormalForm> frontier_;
  std::vector<std::uint64_t> growth_;  // growth_[r] = |ball of radius r|
};

// Witness word for g: tree-adjustment edges with balanced shifts, then a
// b-power compressed through a b^{kp} a^-1 = b^{kq}. Its length is the
// upper bound; reduce(word) == g by construction.
Word witness_word(const NormalForm& g);
Int witness_length(const NormalForm& g);

// Length of the compressed word for b^n (used standalone by strip counting).
Int compressed_b_length(const Presentation& pres, const Int& n);
Word compressed_b_word(const Presentation& pres, const Int& n);

// Lower bound from the level, tree-distance and projection metrics; never
// exceeds the true word length.
std::int64_t word_length_lower(const NormalForm& g);

WordLengthBounds word_length(const NormalForm& g, int bfs_cap = 10,
                             BallOracle* shared = nullptr);

}  // namespace bs::core
