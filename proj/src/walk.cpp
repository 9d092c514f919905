#include "bs/walk.hpp"

#include <algorithm>
#include <set>

#include "bs/projections.hpp"

namespace bs::walk {

Xoshiro256ss Xoshiro256ss::seeded(std::uint64_t master_seed, std::uint64_t stream) {
  SplitMix64 sm{master_seed + (stream + 1) * 0x9E3779B97F4A7C15ULL};
  Xoshiro256ss x;
  bool nonzero = false;
  for (auto& w : x.s_) {
    w = sm.next();
    nonzero |= w != 0;
  }
  if (!nonzero) x.s_[0] = 1;
  return x;
}

static inline std::uint64_t rotl(std::uint64_t v, int k) {
  return (v << k) | (v >> (64 - k));
}

std::uint64_t Xoshiro256ss::next() {
  std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

std::uint64_t Xoshiro256ss::next_below(std::uint64_t n) {
  std::uint64_t t = (-n) % n;  // 2^64 mod n
  std::uint64_t r;
  do {
    r = next();
  } while (r < t);
  return r % n;
}

Int Xoshiro256ss::next_below_int(const Int& n) {
  if (n <= 0) fail(ErrorCode::InternalError, "sample range must be positive");
  if (mpz_fits_ulong_p(n.get_mpz_t()) && n.get_ui() <= UINT64_MAX)
    return Int(static_cast<unsigned long>(next_below(n.get_ui())));
  std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  int top_bits = static_cast<int>(bits - (words - 1) * 64);
  std::uint64_t top_mask =
      top_bits == 64 ? ~0ULL : ((std::uint64_t(1) << top_bits) - 1);
  std::vector<std::uint64_t> buf(words);
  for (;;) {
    for (std::size_t i = 0; i < words; ++i) buf[i] = next();
    buf[words - 1] &= top_mask;
    Int r;
    mpz_import(r.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buf.data());
    if (r < n) return r;
  }
}

Sampler::Sampler(const Measure& m) {
  denom_ = 1;
  for (const auto& a : m.atoms)
    denom_ = Int(denom_ * a.prob.get_den() / gcd(denom_, Int(a.prob.get_den())));
  Int acc = 0;
  for (const auto& a : m.atoms) {
    acc += Int(a.prob.get_num() * (denom_ / a.prob.get_den()));
    cum_.push_back(acc);
  }
  if (acc != denom_)
    fail(ErrorCode::InternalError, "cumulative weights do not reach the denominator");
  if (mpz_fits_ulong_p(denom_.get_mpz_t())) {
    small_ = true;
    denom64_ = denom_.get_ui();
    for (const auto& c : cum_) cum64_.push_back(c.get_ui());
  }
}

std::size_t Sampler::draw(Xoshiro256ss& rng) const {
  if (small_) {
    std::uint64_t r = rng.next_below(denom64_);
    return static_cast<std::size_t>(
        std::upper_bound(cum64_.begin(), cum64_.end(), r) - cum64_.begin());
  }
  Int r = rng.next_below_int(denom_);
  return static_cast<std::size_t>(std::upper_bound(cum_.begin(), cum_.end(), r) -
                                  cum_.begin());
}

std::vector<std::int64_t> geometric_checkpoints(std::int64_t steps) {
  std::set<std::int64_t> pts;
  for (std::int64_t base = 1; base <= steps; base *= 10)
    for (std::int64_t mult : {1, 2, 5}) {
      std::int64_t v = base * mult;
      if (v <= steps) pts.insert(v);
    }
  if (steps >= 2) pts.insert(steps / 2);
  pts.insert(steps);
  return {pts.begin(), pts.end()};
}

std::string tree_prefix_string(const core::NormalForm& g, int depth_cap) {
  const auto& syls = g.syllables();
  std::size_t n = std::min<std::size_t>(syls.size(), static_cast<std::size_t>(depth_cap));
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += ' ';
    out += syls[i].dir > 0 ? 'u' : 'd';
    out += g.exp_before(i).get_str();
  }
  return out;
}

namespace {

// One support atom, preprocessed for the scalar folds. The affine coefficient
// of the atom is bnum / (p^bu * |q|^bv); the fold only ever needs nonnegative
// power offsets of that shape, so there is no factoring.
struct StepData {
  long lam = 0;
  bool b_zero = true;
  Int bnum;
  long bu = 0, bv = 0;
  Int ex;  // equal-modulus horizontal shift
};

struct ScalarTrack {
  // hyperbolic: B = num / (p^ep * aq^eq)
  Int num = 0;
  long ep = 0, eq = 0;
  PowCache powp, powq;
  // equal modulus
  Int x = 0;

  ScalarTrack(long p, long aq) : powp(p), powq(aq) {}
};

StepData make_step(const Presentation& pres, const Atom& atom) {
  StepData s;
  s.lam = atom.g.level();
  if (pres.hyperbolic_class()) {
    Rat B = proj::project_hyp(atom.g).B;
    if (B != 0) {
      s.b_zero = false;
      // clear the denominator with matched powers of p and |q|
      long L = 0;
      Int scale = 1;
      Int paq = Int(pres.p) * Int(pres.abs_q());
      while (Rat(B * scale).get_den() != 1) {
        scale *= paq;
        ++L;
        if (L > 1024) fail(ErrorCode::InternalError, "atom coefficient denominator");
      }
      s.bu = s.bv = L;
      s.bnum = Int(Rat(B * scale).get_num());
    }
  } else if (pres.cls == core::GroupClass::EqualAbs) {
    s.ex = proj::project_euclid(atom.g).x;
  }
  return s;
}

int sign_at(const Presentation& pres, std::int64_t lambda) {
  return (pres.q < 0 && (lambda & 1)) ? -1 : 1;
}

void add_scalar(ScalarTrack& tr, const StepData& sd, std::int64_t lambda, int sign) {
  // term = sign * (aq/p)^lambda * bnum / (p^bu * aq^bv)
  long need_p = sd.bu + lambda;
  long need_q = sd.bv - lambda;
  if (need_p > tr.ep) {
    tr.num *= tr.powp.get(static_cast<std::size_t>(need_p - tr.ep));
    tr.ep = need_p;
  }
  if (need_q > tr.eq) {
    tr.num *= tr.powq.get(static_cast<std::size_t>(need_q - tr.eq));
    tr.eq = need_q;
  }
  Int term = sd.bnum * tr.powp.get(static_cast<std::size_t>(tr.ep - need_p)) *
             tr.powq.get(static_cast<std::size_t>(tr.eq - need_q));
  if (sign > 0)
    tr.num += term;
  else
    tr.num -= term;
}

Rat scalar_to_rat(ScalarTrack& tr) {
  Rat r(tr.num, tr.powp.get(static_cast<std::size_t>(tr.ep)) *
                    tr.powq.get(static_cast<std::size_t>(tr.eq)));
  r.canonicalize();
  return r;
}

void append_in_place(core::NormalForm& g, const core::NormalForm& h) {
  g.mul_b(h.lead());
  for (std::size_t i = 0; i < h.syllables().size(); ++i) {
    g.mul_a(h.syllables()[i].dir);
    g.mul_b(h.syllables()[i].exp);
  }
}

template <typename DrawFn>
Trajectory run_impl(const Measure& m, const WalkConfig& cfg, std::uint64_t stream,
                    DrawFn&& draw) {
  const Presentation& pres = m.pres;
  const bool hyp = pres.hyperbolic_class();
  const bool eqa = pres.cls == core::GroupClass::EqualAbs;

  std::vector<StepData> steps;
  steps.reserve(m.size());
  for (const auto& a : m.atoms) steps.push_back(make_step(pres, a));

  std::vector<std::int64_t> cps = cfg.checkpoints;
  if (cps.empty()) cps = geometric_checkpoints(cfg.steps);
  if (cps.back() != cfg.steps)
    fail(ErrorCode::ConfigError, "checkpoint schedule must end at the final step");

  Trajectory t;
  t.stream = stream;
  if (cfg.store_increments) t.increments.reserve(cfg.steps);
  if (cfg.dense_lambda) {
    t.lambda.reserve(cfg.steps + 1);
    t.lambda.push_back(0);
  }

  ScalarTrack tr(pres.p, pres.abs_q());
  const bool need_nf = cfg.track_tree || cfg.store_nf;
  core::NormalForm nf = core::NormalForm::identity(pres);
  std::int64_t lambda = 0;
  std::size_t next_cp = 0;

  for (std::int64_t n = 1; n <= cfg.steps; ++n) {
    std::size_t i = draw();
    if (cfg.store_increments) t.increments.push_back(static_cast<std::uint32_t>(i));
    const StepData& sd = steps[i];
    if (cfg.track_scalar) {
      if (hyp && !sd.b_zero) add_scalar(tr, sd, lambda, sign_at(pres, lambda));
      if (eqa && sd.ex != 0) {
        if (sign_at(pres, lambda) > 0)
          tr.x += sd.ex;
        else
          tr.x -= sd.ex;
      }
    }
    if (need_nf) append_in_place(nf, m.atoms[i].g);
    lambda += sd.lam;
    if (cfg.dense_lambda) t.lambda.push_back(lambda);

    if (next_cp < cps.size() && n == cps[next_cp]) {
      Checkpoint cp;
      cp.n = n;
      cp.lambda = lambda;
      cp.sign = sign_at(pres, lambda);
      if (cfg.track_scalar && hyp) {
        cp.has_B = true;
        cp.B = scalar_to_rat(tr);
      }
      if (cfg.track_scalar && eqa) {
        cp.has_x = true;
        cp.x = tr.x;
      }
      if (cfg.track_tree) {
        cp.tree_depth = static_cast<std::int64_t>(nf.syllable_count());
        cp.tree_prefix = tree_prefix_string(nf, cfg.prefix_depth);
      }
      if (cfg.store_nf) cp.nf = nf.to_string();
      t.cps.push_back(std::move(cp));
      ++next_cp;
    }
  }
  if (need_nf) t.final_nf = std::move(nf);
  return t;
}

}  // namespace

Trajectory run_trajectory(const Measure& m, const Sampler& sampler,
                          std::uint64_t master_seed, std::uint64_t stream,
                          const WalkConfig& cfg) {
  Xoshiro256ss rng = Xoshiro256ss::seeded(master_seed, stream);
  return run_impl(m, cfg, stream, [&] { return sampler.draw(rng); });
}

Trajectory replay_trajectory(const Measure& m, const std::vector<std::uint32_t>& incs,
                             const WalkConfig& cfg) {
  if (static_cast<std::int64_t>(incs.size()) != cfg.steps)
    fail(ErrorCode::ConfigError, "increment record does not match the step count");
  std::size_t pos = 0;
  return run_impl(m, cfg, 0, [&] { return static_cast<std::size_t>(incs[pos++]); });
}

std::vector<std::int64_t> ladder_times(const std::vector<std::int64_t>& lambda_track) {
  std::vector<std::int64_t> taus;
  if (lambda_track.empty()) return taus;
  taus.push_back(0);
  std::int64_t ref = lambda_track[0];
  for (std::size_t k = 1; k < lambda_track.size(); ++k) {
    if (lambda_track[k] > ref) {
      taus.push_back(static_cast<std::int64_t>(k));
      ref = lambda_track[k];
    }
  }
  return taus;
}

}  // namespace bs::walk
