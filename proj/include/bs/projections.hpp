#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bs/normal_form.hpp"

namespace bs::proj {

using core::NormalForm;
using core::Presentation;

inline std::int64_t level(const NormalForm& g) { return g.level(); }

// Coset g<b> of the vertex tree, keyed by the push-right prefix of g.
struct TreeVertex {
  NormalForm rep;  // trailing exponent is zero

  bool is_base() const { return rep.is_identity(); }
  std::int64_t level() const { return rep.level(); }
  std::size_t depth() const { return rep.syllable_count(); }
  bool operator==(const TreeVertex& o) const { return rep == o.rep; }
  bool operator!=(const TreeVertex& o) const { return !(*this == o); }
};

struct TreeVertexHash {
  std::size_t operator()(const TreeVertex& v) const {
    return static_cast<std::size_t>(v.rep.hash());
  }
};

TreeVertex project_tree(const NormalForm& g);
TreeVertex base_vertex(const Presentation& pres);

// Exactly |q| neighbours one level up (shifts 0..|q|-1) and p one level
// down (shifts 0..p-1), in that order.
std::vector<TreeVertex> tree_neighbours(const TreeVertex& v);

struct TreeEdge {
  bool up;
  int shift;
  bool operator==(const TreeEdge& o) const { return up == o.up && shift == o.shift; }
};

// Reduced path from the base vertex; finite record of a (possibly infinite)
// boundary point. truncated marks an infinite end recorded to finite depth.
struct TreeEnd {
  Presentation pres;
  std::vector<TreeEdge> edges;
  bool truncated = true;

  std::size_t depth() const { return edges.size(); }
  std::string to_string() const;
};

TreeEnd parse_end(const Presentation& pres, const std::string& text, bool truncated);

std::vector<TreeEdge> edges_of(const TreeVertex& v);
TreeVertex vertex_of(const Presentation& pres, const std::vector<TreeEdge>& edges);

// Reduced path from base through the listed vertices; consecutive entries
// must be tree-adjacent and the walk must start at the base vertex.
TreeEnd end_prefix(const std::vector<TreeVertex>& path, bool truncated);

// Orientation-aware upper half-plane isometry A*z + B or A*(-conj z) + B;
// the projected point is always A*i + B. sign is +1 for the plain affine
// map and -1 for the reflected one (only reachable when q < 0).
struct HypPoint {
  Rat A;
  Rat B;
  int sign = 1;
};

HypPoint hyp_identity();
HypPoint hyp_compose(const HypPoint& left, const HypPoint& right);
HypPoint hyp_gen_a(const Presentation& pres, int dir);
HypPoint hyp_gen_b(const Presentation& pres, const Int& r);
HypPoint project_hyp(const NormalForm& g);
std::string hyp_to_string(const HypPoint& z);

// Plane isometry (x,y) -> (s*x + tx, y + ty) for |p| = |q| groups; the
// projected point is (x, y) with y equal to the level.
struct EuclidPoint {
  Int x;
  std::int64_t y = 0;
  int sign = 1;
};

EuclidPoint euclid_identity();
EuclidPoint euclid_compose(const EuclidPoint& left, const EuclidPoint& right);
EuclidPoint project_euclid(const NormalForm& g);

}  // namespace bs::proj
