#include <doctest.h>

#include <random>

#include "bs/word_length.hpp"
#include "oracle_britton.hpp"

using namespace bs;
using core::NormalForm;

TEST_CASE("identity and generators") {
  auto pres = core::classify(2, 3);
  auto wl = core::word_length(NormalForm::identity(pres), 0);
  CHECK(wl.exact);
  CHECK(wl.value() == 0);
  for (const char* s : {"a", "A", "b", "B"}) {
    auto w = core::word_length(core::reduce(pres, s), 4);
    CHECK(w.exact);
    CHECK(w.value() == 1);
  }
}

TEST_CASE("b^3 in BS(2,3) has length exactly 3") {
  auto pres = core::classify(2, 3);
  auto wl = core::word_length(core::reduce(pres, "b^3"), 6);
  CHECK(wl.exact);
  CHECK(wl.value() == 3);  // bbb beats a b^2 a^-1 (4 letters)
}

TEST_CASE("b^9 with search disabled still brackets tightly") {
  auto pres = core::classify(2, 3);
  auto g = core::reduce(pres, "b^9");
  auto wl = core::word_length(g, 0);
  CHECK_FALSE(wl.exact);
  // witness a a b^4 A A (two relation applications) gives the ceiling
  CHECK(wl.upper <= 8);
  // the plane projection forces at least ceil(arcosh(1 + 81/2) / ell_b) = 5
  CHECK(wl.lower >= 5);
  CHECK(wl.lower <= wl.upper);
  CHECK_THROWS_AS(wl.value(), Error);

  auto resolved = core::word_length(g, 8);
  CHECK(resolved.exact);
  CHECK(resolved.value() >= 5);
  CHECK(resolved.value() <= 8);
}

TEST_CASE("ball oracle growth is consistent") {
  auto pres = core::classify(2, 3);
  core::BallOracle oracle(pres);
  oracle.grow_to(3);
  const auto& g = oracle.growth();
  REQUIRE(g.size() >= 4);
  CHECK(g[0] == 1);
  CHECK(g[1] == 5);  // 1, a, a^-1, b, b^-1
  CHECK(g[2] > g[1]);
  CHECK(g[3] > g[2]);
  CHECK(oracle.elements_at(1).size() == g[1] - g[0]);
}

TEST_CASE("witness words reduce back to their element") {
  std::mt19937_64 rng(4242);
  for (auto [p, q] : {std::pair{2, 3}, {2, -3}, {3, 5}, {2, -2}}) {
    auto pres = core::classify(p, q);
    for (int i = 0; i < 150; ++i) {
      auto g = core::reduce(pres, oracle::random_word(rng, 14, 4));
      auto w = core::witness_word(g);
      CHECK(core::reduce(pres, w) == g);
      CHECK(oracle::word_letters(w) == core::witness_length(g));
    }
  }
}

TEST_CASE("bounds sandwich the BFS value") {
  std::mt19937_64 rng(31337);
  auto pres = core::classify(2, 3);
  core::BallOracle shared(pres);
  shared.grow_to(6);
  for (int i = 0; i < 200; ++i) {
    auto g = core::reduce(pres, oracle::random_word(rng, 6, 2));
    auto wl = core::word_length(g, 6, &shared);
    CHECK(wl.lower <= wl.upper);
    std::int64_t bfs = shared.lookup(g);
    if (bfs >= 0) {
      CHECK(wl.exact);
      CHECK(wl.value() == bfs);
      CHECK(core::word_length_lower(g) <= bfs);
      CHECK(core::witness_length(g) >= bfs);
    } else {
      CHECK(wl.lower > 6);
    }
  }
}

TEST_CASE("compressed b-powers stay logarithmic") {
  auto pres = core::classify(2, 3);
  Int n(1);
  for (int e = 0; e < 12; ++e) n *= 3;  // 3^12
  auto w = core::compressed_b_word(pres, n);
  CHECK(core::reduce(pres, w) == core::reduce(pres, "b^" + n.get_str()));
  CHECK(core::compressed_b_length(pres, n) < 200);
  CHECK(core::compressed_b_length(pres, Int(0)) == 0);
  CHECK(core::compressed_b_length(pres, Int(-2)) == 2);
}
