#include <doctest.h>

#include <cmath>
#include <queue>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "bs/geometry.hpp"
#include "oracle_britton.hpp"

using namespace bs;
using core::NormalForm;
using doctest::Approx;

namespace {

// Unweighted BFS over tree_neighbours, independent of the algebraic distance.
std::int64_t tree_bfs(const proj::TreeVertex& u, const proj::TreeVertex& v, int cap) {
  if (u == v) return 0;
  std::unordered_map<proj::TreeVertex, std::int64_t, proj::TreeVertexHash> dist;
  std::queue<proj::TreeVertex> q;
  dist[u] = 0;
  q.push(u);
  while (!q.empty()) {
    auto cur = q.front();
    q.pop();
    auto d = dist[cur];
    if (d >= cap) continue;
    for (const auto& nb : proj::tree_neighbours(cur)) {
      if (dist.count(nb)) continue;
      if (nb == v) return d + 1;
      dist[nb] = d + 1;
      q.push(nb);
    }
  }
  return -1;
}

}  // namespace

TEST_CASE("metric constants for (2,3)") {
  auto mc = geom::metric_constants(core::classify(2, 3));
  CHECK(mc.ell_a == Approx(std::log(1.5)).epsilon(1e-15));
  CHECK(mc.ell_b == Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-15));
  CHECK(mc.c == 3);
  CHECK(mc.ell_max() == Approx(mc.ell_b));
  auto mc2 = geom::metric_constants(core::classify(3, -5));
  CHECK(mc2.ell_a == Approx(std::log(5.0 / 3.0)).epsilon(1e-15));
  CHECK(mc2.c == 5);
}

TEST_CASE("half-plane distance on frozen pairs") {
  proj::HypPoint i0{Rat(1), Rat(0), 1};
  proj::HypPoint i1{Rat(1), Rat(1), 1};
  proj::HypPoint up{Rat(3, 2), Rat(0), 1};
  CHECK(geom::d_hyp(i0, i0) == 0.0);
  CHECK(geom::d_hyp(i0, i1) == Approx(std::log((3.0 + std::sqrt(5.0)) / 2.0)).epsilon(1e-12));
  CHECK(geom::d_hyp(i0, up) == Approx(std::log(1.5)).epsilon(1e-12));
  CHECK(geom::d_hyp(i1, i0) == geom::d_hyp(i0, i1));
}

TEST_CASE("half-plane distance obeys metric axioms") {
  std::mt19937_64 rng(17);
  auto pres = core::classify(2, -3);
  for (int i = 0; i < 120; ++i) {
    auto x = proj::project_hyp(core::reduce(pres, oracle::random_word(rng, 6, 3)));
    auto y = proj::project_hyp(core::reduce(pres, oracle::random_word(rng, 6, 3)));
    auto z = proj::project_hyp(core::reduce(pres, oracle::random_word(rng, 6, 3)));
    double xy = geom::d_hyp(x, y), yz = geom::d_hyp(y, z), xz = geom::d_hyp(x, z);
    CHECK(xy >= 0.0);
    CHECK(xy == geom::d_hyp(y, x));
    CHECK(xz <= xy + yz + 1e-9);
    bool same = x.A == y.A && x.B == y.B;
    CHECK((xy == 0.0) == same);
  }
}

TEST_CASE("left translates preserve the half-plane distance") {
  std::mt19937_64 rng(23);
  auto pres = core::classify(2, 3);
  for (int i = 0; i < 80; ++i) {
    auto g = proj::project_hyp(core::reduce(pres, oracle::random_word(rng, 6, 3)));
    auto x = proj::project_hyp(core::reduce(pres, oracle::random_word(rng, 6, 3)));
    auto y = proj::project_hyp(core::reduce(pres, oracle::random_word(rng, 6, 3)));
    CHECK(geom::d_hyp(proj::hyp_compose(g, x), proj::hyp_compose(g, y)) ==
          Approx(geom::d_hyp(x, y)).epsilon(1e-11));
  }
}

TEST_CASE("tree distance matches neighbour-graph BFS") {
  auto pres = core::classify(2, 3);
  auto B = proj::base_vertex(pres);
  auto aB = proj::project_tree(core::reduce(pres, "a"));
  auto baB = proj::project_tree(core::reduce(pres, "b a"));
  auto conj = proj::project_tree(core::reduce(pres, "a b A"));
  CHECK(geom::d_tree(B, B) == 0);
  CHECK(geom::d_tree(B, aB) == 1);
  CHECK(geom::d_tree(B, conj) == 2);
  CHECK(geom::d_tree(aB, baB) == 2);

  std::mt19937_64 rng(31);
  for (auto [p, q] : {std::pair{2, 3}, {2, -2}}) {
    auto pr = core::classify(p, q);
    for (int i = 0; i < 40; ++i) {
      auto u = proj::project_tree(core::reduce(pr, oracle::random_word(rng, 3, 2)));
      auto v = proj::project_tree(core::reduce(pr, oracle::random_word(rng, 3, 2)));
      auto alg = geom::d_tree(u, v);
      if (alg <= 5) CHECK(alg == tree_bfs(u, v, 5));
      CHECK(geom::d_tree(v, u) == alg);
    }
  }
}

TEST_CASE("end distance is a truncation-aware ultrametric") {
  auto pres = core::classify(2, 3);
  auto x = proj::parse_end(pres, "u0 u1 d0 u2", false);
  auto y = proj::parse_end(pres, "u0 u1 d0 d1", false);
  auto z = proj::parse_end(pres, "u1 u1 d0 u2", false);
  CHECK(geom::d_ends(x, y) == Approx(0.125));
  CHECK(geom::d_ends(x, z) == 1.0);
  CHECK(geom::d_ends(x, x) == 0.0);
  CHECK(geom::d_ends(x, y) <= std::max(geom::d_ends(x, z), geom::d_ends(z, y)) + 1e-15);

  // Truncated records that agree on their whole common window cannot be
  // told apart, only bounded.
  auto t1 = proj::parse_end(pres, "u0 u1", true);
  auto t2 = proj::parse_end(pres, "u0 u1 d0", true);
  CHECK_THROWS_AS(geom::d_ends(t1, t2), Error);
  auto t3 = proj::parse_end(pres, "u0 u2", true);
  CHECK(geom::d_ends(t1, t3) == Approx(0.5));
}

TEST_CASE("plane paths cover their own vertices") {
  auto pres = core::classify(2, 3);
  auto path = geom::make_plane_path(pres, {0, 0, 0}, {0, 0, 0});
  CHECK(path.level_max() == 3);
  CHECK(geom::plane_vertex(path, 0) == proj::base_vertex(pres));
  CHECK(geom::plane_vertex(path, 1) == proj::project_tree(core::reduce(pres, "a")));
  CHECK(geom::plane_vertex(path, -1) == proj::project_tree(core::reduce(pres, "A")));
  CHECK(geom::plane_contains(path, core::reduce(pres, "a a b^5")));
  CHECK(geom::plane_contains(path, core::reduce(pres, "b^-4")));
  CHECK_FALSE(geom::plane_contains(path, core::reduce(pres, "b a")));
}

TEST_CASE("plane distance on frozen pairs") {
  auto pres = core::classify(2, 3);
  auto path = geom::make_plane_path(pres, {0, 0, 0, 0}, {0, 0, 0, 0});
  auto one = NormalForm::identity(pres);
  CHECK(geom::plane_distance(path, one, one) == 0);
  CHECK(geom::plane_distance(path, one, core::reduce(pres, "b")) == 1);
  CHECK(geom::plane_distance(path, one, core::reduce(pres, "a b")) == 2);
  CHECK(geom::plane_distance(path, one, core::reduce(pres, "b^3")) == 3);
  CHECK(geom::plane_distance(path, core::reduce(pres, "b"), core::reduce(pres, "b^3")) == 2);
  CHECK(geom::plane_distance(path, one, core::reduce(pres, "a")) == 1);
  CHECK_THROWS_AS(geom::plane_distance(path, one, core::reduce(pres, "b a")), Error);
}

TEST_CASE("bilipschitz audit finds no forward violations at small radius") {
  for (auto [p, q] : {std::pair{2, 3}, {2, -3}}) {
    auto pres = core::classify(p, q);
    auto path = geom::make_plane_path(pres, std::vector<int>(7, 0), std::vector<int>(7, 0));
    auto rep = geom::bilipschitz_audit(path, 3);
    CHECK(rep.pairs > 0);
    CHECK(rep.forward_violations == 0);
    CHECK(rep.max_ratio > 0.0);
    for (const auto& row : rep.rows) {
      CHECK(row.d_plane >= 1);
      CHECK(row.ratio == Approx(double(row.d_plane) / row.d_hyp));
    }
  }
}

TEST_CASE("ball growth agrees with an independent BFS") {
  auto pres = core::classify(2, 3);
  auto g = geom::ball_growth(pres, 3);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == 1);
  CHECK(g[1] == 5);
  for (std::size_t r = 1; r < g.size(); ++r) CHECK(g[r] > g[r - 1]);

  // Hash-set BFS over the four generators, sharing no code with ball_growth.
  std::unordered_set<NormalForm, core::NormalFormHash> seen;
  std::vector<NormalForm> frontier{NormalForm::identity(pres)};
  seen.insert(frontier[0]);
  std::vector<std::uint64_t> counts{1};
  for (int r = 1; r <= 3; ++r) {
    std::vector<NormalForm> next;
    for (const auto& u : frontier) {
      for (int mv = 0; mv < 4; ++mv) {
        auto v = u;
        if (mv < 2)
          v.mul_a(mv == 0 ? 1 : -1);
        else
          v.mul_b(Int(mv == 2 ? 1 : -1));
        if (seen.insert(v).second) next.push_back(v);
      }
    }
    counts.push_back(counts.back() + next.size());
    frontier = std::move(next);
  }
  for (std::size_t r = 0; r < g.size(); ++r) CHECK(g[r] == counts[r]);
  CHECK_THROWS_AS(geom::ball_growth(pres, 13, 12), Error);
}

TEST_CASE("horosphere counts grow exponentially in the distance") {
  auto pres = core::classify(2, 3);
  CHECK(geom::horosphere_count(pres, 0.0) == 1);
  Int prev = 1;
  for (int n = 1; n <= 8; ++n) {
    Int cur = geom::horosphere_count(pres, double(n));
    CHECK(cur > prev);
    prev = cur;
  }
  // d(i, i+k) ~ 2 ln|k|, so counts track e^{n/2} within a constant factor.
  double rate = ln_int(prev) / 8.0;
  CHECK(rate > 0.45);
  CHECK(rate < 0.75);
}

TEST_CASE("disc transform on frozen points") {
  auto at = [](double re, double im) { return geom::cayley_transform(rat_from_double(re), rat_from_double(im)); };
  auto o = at(0.0, 1.0);
  CHECK(o.first == Approx(0.0));
  CHECK(o.second == Approx(0.0));
  auto r = at(1.0, 1.0);
  CHECK(r.first == Approx(0.2));
  CHECK(r.second == Approx(-0.4));
  auto u = at(0.0, 1.5);
  CHECK(u.first == Approx(0.2));
  CHECK(u.second == Approx(0.0));
  // Anything in the upper half-plane lands strictly inside the unit disc.
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> re(-20.0, 20.0), im(0.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    auto w = at(re(rng), im(rng));
    CHECK(w.first * w.first + w.second * w.second < 1.0);
  }
  auto pres = core::classify(2, 3);
  auto z = proj::project_hyp(core::reduce(pres, "b"));
  auto w = geom::cayley_transform(z);
  CHECK(w.first == Approx(0.2));
  CHECK(w.second == Approx(-0.4));
}
