#include "bs/projections.hpp"

#include <sstream>

namespace bs::proj {

TreeVertex project_tree(const NormalForm& g) { return TreeVertex{g.prefix()}; }

TreeVertex base_vertex(const Presentation& pres) {
  return TreeVertex{NormalForm::identity(pres)};
}

std::vector<TreeVertex> tree_neighbours(const TreeVertex& v) {
  const Presentation& pres = v.rep.pres();
  std::vector<TreeVertex> out;
  out.reserve(pres.abs_q() + pres.p);
  for (int j = 0; j < pres.abs_q(); ++j) {
    NormalForm n = v.rep;
    n.mul_b(j);
    n.mul_a(1);
    out.push_back(project_tree(n));
  }
  for (int j = 0; j < pres.p; ++j) {
    NormalForm n = v.rep;
    n.mul_b(j);
    n.mul_a(-1);
    out.push_back(project_tree(n));
  }
  return out;
}

std::string TreeEnd::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i) os << ' ';
    os << (edges[i].up ? 'u' : 'd') << edges[i].shift;
  }
  return os.str();
}

TreeEnd parse_end(const Presentation& pres, const std::string& text, bool truncated) {
  TreeEnd e{pres, {}, truncated};
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok.size() < 2 || (tok[0] != 'u' && tok[0] != 'd'))
      fail(ErrorCode::ParseError, "bad edge token '" + tok + "'");
    bool up = tok[0] == 'u';
    int shift = 0;
    try {
      shift = std::stoi(tok.substr(1));
    } catch (...) {
      fail(ErrorCode::ParseError, "bad edge shift in '" + tok + "'");
    }
    int bound = up ? pres.abs_q() : pres.p;
    if (shift < 0 || shift >= bound)
      fail(ErrorCode::ParseError, "edge shift out of range in '" + tok + "'");
    e.edges.push_back({up, shift});
  }
  return e;
}

std::vector<TreeEdge> edges_of(const TreeVertex& v) {
  std::vector<TreeEdge> out;
  const auto& syls = v.rep.syllables();
  out.reserve(syls.size());
  for (std::size_t i = 0; i < syls.size(); ++i) {
    out.push_back({syls[i].dir > 0,
                   static_cast<int>(v.rep.exp_before(i).get_si())});
  }
  return out;
}

TreeVertex vertex_of(const Presentation& pres, const std::vector<TreeEdge>& edges) {
  NormalForm g = NormalForm::identity(pres);
  for (const auto& e : edges) {
    int bound = e.up ? pres.abs_q() : pres.p;
    if (e.shift < 0 || e.shift >= bound)
      fail(ErrorCode::ParseError, "edge shift out of range");
    g.mul_b(e.shift);
    g.mul_a(e.up ? 1 : -1);
  }
  return project_tree(g);
}

TreeEnd end_prefix(const std::vector<TreeVertex>& path, bool truncated) {
  if (path.empty()) fail(ErrorCode::NotAdjacent, "empty vertex path");
  if (!path.front().is_base())
    fail(ErrorCode::NotAdjacent, "vertex path must start at the base vertex");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    NormalForm step = multiply(invert(path[i].rep), path[i + 1].rep);
    if (step.syllable_count() != 1)
      fail(ErrorCode::NotAdjacent,
           "vertices " + std::to_string(i) + " and " + std::to_string(i + 1) +
               " are not tree-adjacent");
  }
  TreeEnd e{path.front().rep.pres(), edges_of(path.back()), truncated};
  return e;
}

HypPoint hyp_identity() { return HypPoint{Rat(1), Rat(0), 1}; }

HypPoint hyp_compose(const HypPoint& left, const HypPoint& right) {
  HypPoint r;
  r.A = left.A * right.A;
  Rat shifted = left.A * right.B;
  r.B = left.sign > 0 ? Rat(left.B + shifted) : Rat(left.B - shifted);
  r.sign = left.sign * right.sign;
  return r;
}

HypPoint hyp_gen_a(const Presentation& pres, int dir) {
  int sign = pres.q < 0 ? -1 : 1;
  if (dir > 0) return HypPoint{Rat(pres.abs_q(), pres.p), Rat(0), sign};
  return HypPoint{Rat(pres.p, pres.abs_q()), Rat(0), sign};
}

HypPoint hyp_gen_b(const Presentation& pres, const Int& r) {
  (void)pres;
  return HypPoint{Rat(1), Rat(r), 1};
}

HypPoint project_hyp(const NormalForm& g) {
  const Presentation& pres = g.pres();
  if (!pres.hyperbolic_class())
    fail(ErrorCode::WrongClass,
         "half-plane projection needs 1 < p < |q|; group is " +
             std::string(core::group_class_name(pres.cls)));
  HypPoint acc = hyp_identity();
  if (g.lead() != 0) acc = hyp_compose(acc, hyp_gen_b(pres, g.lead()));
  for (const auto& syl : g.syllables()) {
    acc = hyp_compose(acc, hyp_gen_a(pres, syl.dir));
    if (syl.exp != 0) acc = hyp_compose(acc, hyp_gen_b(pres, syl.exp));
  }
  return acc;
}

std::string hyp_to_string(const HypPoint& z) {
  std::ostringstream os;
  os << "A=" << rat_to_string(z.A) << " B=" << rat_to_string(z.B)
     << " s=" << (z.sign > 0 ? "+1" : "-1");
  return os.str();
}

EuclidPoint euclid_identity() { return EuclidPoint{Int(0), 0, 1}; }

EuclidPoint euclid_compose(const EuclidPoint& left, const EuclidPoint& right) {
  EuclidPoint r;
  r.x = left.x + (left.sign > 0 ? right.x : Int(-right.x));
  r.y = left.y + right.y;
  r.sign = left.sign * right.sign;
  return r;
}

EuclidPoint project_euclid(const NormalForm& g) {
  const Presentation& pres = g.pres();
  if (pres.cls != core::GroupClass::EqualAbs)
    fail(ErrorCode::WrongClass, "plane projection needs p = |q| > 1; group is " +
                                    std::string(core::group_class_name(pres.cls)));
  int sq = pres.q < 0 ? -1 : 1;
  EuclidPoint acc = euclid_identity();
  auto mul_gen_a = [&](int dir) {
    EuclidPoint m{Int(0), dir > 0 ? 1 : -1, sq};
    acc = euclid_compose(acc, m);
  };
  auto mul_gen_b = [&](const Int& r) {
    EuclidPoint m{r, 0, 1};
    acc = euclid_compose(acc, m);
  };
  if (g.lead() != 0) mul_gen_b(g.lead());
  for (const auto& syl : g.syllables()) {
    mul_gen_a(syl.dir);
    if (syl.exp != 0) mul_gen_b(syl.exp);
  }
  return acc;
}

}  // namespace bs::proj
