#include <doctest.h>

#include <cmath>

#include "bs/boundary.hpp"
#include "bs/strip.hpp"

using namespace bs;
using boundary::GaugeMode;
using core::NormalForm;
using doctest::Approx;
using walk::WalkConfig;

namespace {

walk::Trajectory dirac_run(const core::Presentation& pres, const std::string& word,
                           std::int64_t steps, std::uint64_t stream = 0,
                           int prefix_depth = 8) {
  auto m = walk::validate_measure(pres, {{word, "1"}});
  walk::Sampler s(m);
  WalkConfig cfg;
  cfg.steps = steps;
  cfg.prefix_depth = prefix_depth;
  return walk::run_trajectory(m, s, 1, stream, cfg);
}

}  // namespace

TEST_CASE("prefix stabilization detects escaping and trapped walks") {
  auto pres = core::classify(2, 3);
  boundary::ConvergenceAgg agg(5);
  agg.add(dirac_run(pres, "a", 20, 0, 5));  // record prefixes at the audited depth
  auto rep = agg.finalize();
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].escaped);
  CHECK(rep.rows[0].stabilized_at == 5);
  CHECK(rep.rows[0].final_depth == 20);
  CHECK(rep.final_fraction == 1.0);

  boundary::ConvergenceAgg trapped(5);
  trapped.add(dirac_run(pres, "b", 20));
  auto rep2 = trapped.finalize();
  CHECK_FALSE(rep2.rows[0].escaped);
  CHECK(rep2.rows[0].final_depth == 0);
  CHECK(rep2.final_fraction == 0.0);
}

TEST_CASE("descending walk drives the affine part to its exact partial sums") {
  for (int q : {3, -3}) {
    auto pres = core::classify(2, q);
    const std::int64_t T = 40;
    auto t = dirac_run(pres, "A b", T);
    const auto& cp = t.cps.back();
    REQUIRE(cp.has_B);

    // Independent fold of the one-step affine data, never touching the walk.
    Rat Ag(2, 3);
    Rat Bg = q > 0 ? Rat(2, 3) : Rat(-2, 3);
    int sg = q > 0 ? 1 : -1;
    Rat A(1), B(0);
    int sign = 1;
    for (std::int64_t n = 0; n < T; ++n) {
      B += (sign > 0 ? Rat(A * Bg) : Rat(-A * Bg));
      A *= Ag;
      sign *= sg;
    }
    CHECK(cp.B == B);
    CHECK(cp.lambda == -T);
  }
}

TEST_CASE("plane-limit report summarizes descent and residuals") {
  auto pres = core::classify(2, 3);
  boundary::HypLimitAgg agg(pres, -1);
  for (std::uint64_t s = 0; s < 3; ++s) agg.add(dirac_run(pres, "A b", 50, s));
  auto rep = agg.finalize();
  CHECK(rep.drift_sign == -1);
  CHECK(rep.frac_residual_below(1e-3) == 1.0);
  CHECK(rep.frac_ln_A_above(0.0) == 0.0);
  CHECK(rep.median_abs_B() == Approx(2.0).epsilon(1e-4));

  boundary::HypLimitAgg up(pres, 1);
  up.add(dirac_run(pres, "a", 20));
  auto rep2 = up.finalize();
  CHECK(rep2.rows[0].ln_A_final == Approx(20 * std::log(1.5)));
  CHECK(rep2.frac_ln_A_above(0.0) == 1.0);
  CHECK(rep2.rows[0].abs_B_final == 0.0);
}

TEST_CASE("speed profile separates linear escape from horospherical crawl") {
  auto pres = core::classify(2, 3);
  boundary::SpeedAgg fast(pres);
  fast.add(dirac_run(pres, "a", 100));
  auto rep = fast.finalize();
  for (double med : rep.median) CHECK(med == Approx(std::log(1.5)).epsilon(1e-9));

  boundary::SpeedAgg slow(pres);
  slow.add(dirac_run(pres, "b", 500));
  auto rep2 = slow.finalize();
  CHECK(rep2.median.back() < 0.05);
  CHECK(rep2.median.back() > 0.0);
  CHECK_THROWS_AS(boundary::SpeedAgg(core::classify(2, 2)), Error);
}

TEST_CASE("record-gap tail of a monotone track puts no mass past gap one") {
  auto pres = core::classify(2, 3);
  boundary::LadderAgg agg(100, 1, 10);
  WalkConfig cfg;
  cfg.steps = 100;
  cfg.track_tree = false;
  auto m = walk::validate_measure(pres, {{"a", "1"}});
  walk::Sampler s(m);
  agg.add(walk::run_trajectory(m, s, 3, 0, cfg));
  auto rep = agg.finalize();
  CHECK(rep.gap_count == 91);
  REQUIRE(!rep.survival.empty());
  for (double sv : rep.survival) CHECK(sv == 0.0);

  CHECK_THROWS_AS(boundary::LadderAgg(100, 0, 10), Error);
  CHECK_THROWS_AS(boundary::LadderAgg(100, 10, 10), Error);
  CHECK_THROWS_AS(boundary::LadderAgg(100, 10, 100), Error);

  boundary::LadderAgg sparse(100, 1, 10);
  walk::Trajectory bare;
  CHECK_THROWS_AS(sparse.add(bare), Error);
}

TEST_CASE("hitting histogram masses refine across depths") {
  auto pres = core::classify(2, 3);
  std::vector<proj::TreeEnd> ends = {
      proj::parse_end(pres, "u0 u0", true),
      proj::parse_end(pres, "u0 u1", true),
      proj::parse_end(pres, "d0 u0", true),
  };
  auto rep = boundary::hitting_histogram(pres, ends, 2);
  CHECK(rep.total == 3);
  REQUIRE(rep.by_depth.size() == 2);
  CHECK(rep.by_depth[0].size() == 2);
  CHECK(rep.by_depth[1].size() == 3);
  CHECK(rep.max_mass[0] == Approx(2.0 / 3.0));
  CHECK(rep.max_mass[1] == Approx(1.0 / 3.0));
  CHECK(rep.refinement_consistent);
  CHECK(rep.depth1_possible == 5);
  CHECK(rep.depth1_zero_cells == 3);
  std::uint64_t sum = 0;
  for (const auto& cell : rep.by_depth[0]) sum += cell.count;
  CHECK(sum == rep.total);
  CHECK_THROWS_AS(boundary::hitting_histogram(pres, ends, 3), Error);
  CHECK_THROWS_AS(boundary::hitting_histogram(pres, ends, 0), Error);
}

TEST_CASE("strip construction around the branch vertex") {
  auto pres = core::classify(2, 3);
  auto minus = proj::parse_end(pres, "d0 d0 d0", true);
  auto plus = proj::parse_end(pres, "u0 u0 u0", true);
  auto s = boundary::build_strip(minus, plus);
  CHECK(s.branch_depth == 0);
  CHECK(s.t_min == -3);
  CHECK(s.t_max == 3);
  CHECK(s.cells.size() == 7);
  CHECK(s.cell_at(0).level == 0);
  CHECK(s.cell_at(2).level == 2);
  CHECK(s.cell_at(-1).A == Rat(2, 3));
  CHECK(s.cell_at(1).A == Rat(3, 2));

  CHECK(boundary::strip_member(s, core::reduce(pres, "b^5")));
  CHECK(boundary::strip_member(s, core::reduce(pres, "a b^2")));
  CHECK_FALSE(boundary::strip_member(s, core::reduce(pres, "b a")));
  CHECK_THROWS_AS(boundary::strip_member(s, core::reduce(pres, "a a a a")), Error);

  CHECK_THROWS_AS(boundary::build_strip(plus, plus), Error);
  auto longer = proj::parse_end(pres, "u0 u0 u0 u1", true);
  CHECK_THROWS_AS(boundary::build_strip(plus, longer), Error);
}

TEST_CASE("horizontal line narrows each coset to its nearest offsets") {
  auto pres = core::classify(2, 3);
  auto minus = proj::parse_end(pres, "d0 d0 d0", true);
  auto plus = proj::parse_end(pres, "u0 u0 u0", true);
  auto bare = boundary::build_strip(minus, plus);
  CHECK_THROWS_AS(boundary::horizontal_minimizers(bare, bare.cell_at(0)), Error);

  auto s = boundary::build_strip(minus, plus, Rat(0));
  auto mins = boundary::horizontal_minimizers(s, s.cell_at(0));
  REQUIRE(mins.size() == 1);
  CHECK(mins[0] == 0);
  CHECK(boundary::strip_member(s, NormalForm::identity(pres)));
  CHECK_FALSE(boundary::strip_member(s, core::reduce(pres, "b")));
  CHECK(boundary::strip_member(s, core::reduce(pres, "a")));
  CHECK_FALSE(boundary::strip_member(s, core::reduce(pres, "a b")));

  auto tie = boundary::build_strip(minus, plus, Rat(1, 2));
  auto two = boundary::horizontal_minimizers(tie, tie.cell_at(0));
  REQUIRE(two.size() == 2);
  CHECK(two[0] == 0);
  CHECK(two[1] == 1);
  CHECK(boundary::strip_member(tie, NormalForm::identity(pres)));
  CHECK(boundary::strip_member(tie, core::reduce(pres, "b")));
}

TEST_CASE("gauge membership and first containing index") {
  auto pres = core::classify(2, 3);
  auto b3 = core::reduce(pres, "b^3");
  CHECK(boundary::gauge_member(b3, GaugeMode::WordBall, 3));
  CHECK_FALSE(boundary::gauge_member(b3, GaugeMode::WordBall, 2));
  auto idx = boundary::gauge_index(b3, GaugeMode::WordBall);
  CHECK(idx.lo == 3);
  CHECK(idx.hi == 3);

  auto b9 = core::reduce(pres, "b^9");
  CHECK_FALSE(boundary::gauge_member(b9, GaugeMode::WordBall, 4, 0));
  CHECK(boundary::gauge_member(b9, GaugeMode::WordBall, 8, 0));
  CHECK_THROWS_AS(boundary::gauge_member(b9, GaugeMode::WordBall, 6, 0), Error);
  auto bracket = boundary::gauge_index(b9, GaugeMode::WordBall, 0);
  CHECK(bracket.lo == 5);
  CHECK(bracket.hi == 8);

  CHECK(boundary::gauge_member(core::reduce(pres, "b"), GaugeMode::ZeroDrift, 1));
  CHECK_FALSE(boundary::gauge_member(core::reduce(pres, "b^2"), GaugeMode::ZeroDrift, 1));
  CHECK(boundary::gauge_member(core::reduce(pres, "a"), GaugeMode::ZeroDrift, 1));
  // the plane radius fits at k=1 but the tree depth needs k^2 >= 2
  CHECK_FALSE(boundary::gauge_member(core::reduce(pres, "a a"), GaugeMode::ZeroDrift, 1));
  CHECK(boundary::gauge_member(core::reduce(pres, "a a"), GaugeMode::ZeroDrift, 2));
  CHECK_THROWS_AS(boundary::gauge_member(b3, GaugeMode::EqualAbs, 3), Error);

  auto eq = core::classify(2, -2);
  auto ab = core::reduce(eq, "a b");
  CHECK(boundary::gauge_member(ab, GaugeMode::EqualAbs, 2));
  CHECK_FALSE(boundary::gauge_member(ab, GaugeMode::EqualAbs, 1));
  CHECK(boundary::gauge_index(ab, GaugeMode::EqualAbs).lo == 2);
  CHECK_THROWS_AS(boundary::gauge_member(ab, GaugeMode::ZeroDrift, 2), Error);

  for (std::int64_t k = 1; k < 6; ++k) {
    if (boundary::gauge_member(b9, GaugeMode::WordBall, k, 10))
      CHECK(boundary::gauge_member(b9, GaugeMode::WordBall, k + 1, 10));
  }
}

TEST_CASE("strip counts stay under their proved ceilings on frozen cases") {
  auto pres = core::classify(2, 3);
  auto minus = proj::parse_end(pres, "d0 d0 d0", true);
  auto plus = proj::parse_end(pres, "u0 u0 u0", true);
  auto s = boundary::build_strip(minus, plus, Rat(0));

  auto c0 = boundary::strip_gauge_count(s, GaugeMode::WordBall, 0);
  CHECK(c0.count_lo == 1);
  CHECK(c0.count_hi == 1);
  CHECK(c0.bound == 2);
  CHECK(c0.bound_ok);
  auto c1 = boundary::strip_gauge_count(s, GaugeMode::WordBall, 1);
  CHECK(c1.count_lo == 3);
  CHECK(c1.count_hi == 3);
  auto c2 = boundary::strip_gauge_count(s, GaugeMode::WordBall, 2);
  CHECK(c2.count_lo == 5);
  CHECK(c2.bound == 10);

  auto bare = boundary::build_strip(minus, plus);
  CHECK_THROWS_AS(boundary::strip_gauge_count(bare, GaugeMode::WordBall, 1), Error);
  auto z1 = boundary::strip_gauge_count(bare, GaugeMode::ZeroDrift, 1);
  CHECK(z1.count_lo == 7);
  CHECK(z1.count_hi == 7);
  CHECK(z1.bound_ok);
  // radius k^2 = 4 outruns the recorded three edges of a truncated end
  CHECK_THROWS_AS(boundary::strip_gauge_count(bare, GaugeMode::ZeroDrift, 2), Error);

  auto eq = core::classify(2, -2);
  auto em = proj::parse_end(eq, "d0 d0", true);
  auto ep = proj::parse_end(eq, "u0 u0", true);
  auto es = boundary::build_strip(em, ep);
  auto e1 = boundary::strip_gauge_count(es, GaugeMode::EqualAbs, 1);
  CHECK(e1.count_lo == 5);
  CHECK(e1.bound == 9);
  auto e2 = boundary::strip_gauge_count(es, GaugeMode::EqualAbs, 2);
  CHECK(e2.count_lo == 13);
  CHECK(e2.bound == 25);
  CHECK_THROWS_AS(boundary::strip_gauge_count(es, GaugeMode::WordBall, 1), Error);
}