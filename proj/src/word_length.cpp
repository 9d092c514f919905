#include "bs/word_length.hpp"

#include <algorithm>
#include <cmath>

#include "bs/geometry.hpp"
#include "bs/projections.hpp"

namespace bs::core {

BallOracle::BallOracle(const Presentation& pres) : pres_(pres) {
  NormalForm one = NormalForm::identity(pres_);
  dist_.emplace(one, 0);
  frontier_.push_back(one);
  growth_.push_back(1);
}

void BallOracle::grow_to(int radius) {
  while (radius_done_ < radius) {
    std::vector<NormalForm> next;
    for (const auto& g : frontier_) {
      for (int move = 0; move < 4; ++move) {
        NormalForm n = g;
        switch (move) {
          case 0: n.mul_a(1); break;
          case 1: n.mul_a(-1); break;
          case 2: n.mul_b(1); break;
          case 3: n.mul_b(-1); break;
        }
        if (dist_.count(n)) continue;
        dist_.emplace(n, radius_done_ + 1);
        next.push_back(std::move(n));
      }
    }
    frontier_ = std::move(next);
    ++radius_done_;
    growth_.push_back(growth_.back() + frontier_.size());
  }
}

std::int64_t BallOracle::lookup(const NormalForm& g) const {
  auto it = dist_.find(g);
  return it == dist_.end() ? -1 : it->second;
}

std::vector<NormalForm> BallOracle::elements_at(int radius) const {
  std::vector<NormalForm> out;
  for (const auto& [g, d] : dist_)
    if (d == radius) out.push_back(g);
  return out;
}

namespace {

Int word_letter_count(const Word& w) {
  Int n = 0;
  for (const auto& l : w) n += abs_int(l.exp);
  return n;
}

}  // namespace

Word compressed_b_word(const Presentation& pres, const Int& n) {
  Word w;
  if (n == 0) return w;
  const long aq = pres.abs_q();
  if (pres.p >= aq || abs_int(n) <= std::max<long>(aq, 4)) {
    w.push_back({'b', n});
    return w;
  }
  Int s = balanced_mod(n, aq);
  Int k = (n - s) / pres.q;
  Word inner = compressed_b_word(pres, k * pres.p);
  Int rec_len = abs_int(s) + 2 + word_letter_count(inner);
  if (abs_int(n) <= rec_len) {
    w.push_back({'b', n});
    return w;
  }
  if (s != 0) w.push_back({'b', s});
  w.push_back({'a', Int(1)});
  w.insert(w.end(), inner.begin(), inner.end());
  w.push_back({'a', Int(-1)});
  return w;
}

Int compressed_b_length(const Presentation& pres, const Int& n) {
  return word_letter_count(compressed_b_word(pres, n));
}

Word witness_word(const NormalForm& g) {
  const Presentation& pres = g.pres();
  Word w;
  Int c = 0;  // reached element = canonical-prefix * b^c
  const auto& syls = g.syllables();
  for (std::size_t i = 0; i < syls.size(); ++i) {
    int dir = syls[i].dir;
    long modulus = dir > 0 ? pres.abs_q() : pres.p;
    long divisor = dir > 0 ? pres.q : pres.p;
    long carry_mult = dir > 0 ? pres.p : pres.q;
    const Int& r = g.exp_before(i);
    Int e = balanced_mod(r - c, modulus);
    if (e != 0) w.push_back({'b', e});
    w.push_back({'a', Int(dir)});
    Int k = (c + e - r) / divisor;
    c = k * carry_mult;
  }
  Word tail = compressed_b_word(pres, Int(g.trailing() - c));
  w.insert(w.end(), tail.begin(), tail.end());
  return w;
}

Int witness_length(const NormalForm& g) { return word_letter_count(witness_word(g)); }

std::int64_t word_length_lower(const NormalForm& g) {
  if (g.is_identity()) return 0;
  const Presentation& pres = g.pres();
  std::int64_t lo = std::llabs(g.level());
  lo = std::max<std::int64_t>(lo, static_cast<std::int64_t>(g.syllable_count()));
  const double tol = 1e-9;
  if (pres.hyperbolic_class()) {
    geom::MetricConstants mc = geom::metric_constants(pres);
    double dh = geom::d_hyp(proj::hyp_identity(), proj::project_hyp(g));
    lo = std::max<std::int64_t>(
        lo, static_cast<std::int64_t>(std::ceil(dh / mc.ell_max() - tol)));
  } else if (pres.cls == GroupClass::EqualAbs) {
    double de = geom::d_eucl(proj::euclid_identity(), proj::project_euclid(g));
    lo = std::max<std::int64_t>(lo, static_cast<std::int64_t>(std::ceil(de - tol)));
  }
  return std::max<std::int64_t>(lo, 1);
}

WordLengthBounds word_length(const NormalForm& g, int bfs_cap, BallOracle* shared) {
  if (g.is_identity()) return {0, 0, true};
  std::int64_t lo = word_length_lower(g);
  if (lo <= bfs_cap) {
    BallOracle local(g.pres());
    BallOracle& oracle = shared ? *shared : local;
    for (;;) {
      std::int64_t d = oracle.lookup(g);
      if (d >= 0) return {d, d, true};
      if (oracle.radius_done() >= bfs_cap) break;
      oracle.grow_to(oracle.radius_done() + 1);
    }
    lo = std::max<std::int64_t>(lo, bfs_cap + 1);
  }
  std::int64_t up = to_i64_saturate(witness_length(g));
  if (up < lo)
    fail(ErrorCode::InternalError, "word-length bound inversion for " + g.to_string());
  return {lo, up, lo == up};
}

}  // namespace bs::core
