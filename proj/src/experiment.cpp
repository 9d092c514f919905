#include "bs/experiment.hpp"

#include <algorithm>

namespace bs::expt {

using boundary::GaugeIndex;
using boundary::GaugeMode;
using boundary::StripCount;
using core::NormalForm;

int drift_sign(const walk::Measure& m) {
  Rat d = walk::drift(m);
  return d > 0 ? 1 : (d < 0 ? -1 : 0);
}

namespace {

walk::WalkConfig base_config(std::int64_t steps) {
  walk::WalkConfig cfg;
  cfg.steps = steps;
  cfg.checkpoints = walk::geometric_checkpoints(steps);
  cfg.dense_lambda = false;
  return cfg;
}

template <class Agg>
void feed(const WalkSetup& s, const walk::WalkConfig& cfg, Agg& agg) {
  walk::Sampler sampler(s.measure);
  for (std::uint64_t i = 0; i < s.trajectories; ++i)
    agg.add(walk::run_trajectory(s.measure, sampler, s.master_seed, i, cfg));
}

}  // namespace

boundary::ConvergenceReport run_tree_convergence(const WalkSetup& s, int prefix_depth) {
  walk::WalkConfig cfg = base_config(s.steps);
  cfg.track_scalar = false;
  cfg.prefix_depth = prefix_depth;
  boundary::ConvergenceAgg agg(prefix_depth);
  feed(s, cfg, agg);
  return agg.finalize();
}

boundary::HypLimitReport run_hyp_limit(const WalkSetup& s) {
  int sign = drift_sign(s.measure);
  if (sign == 0)
    fail(ErrorCode::WrongDrift, "plane-limit diagnostics need a nonzero drift");
  walk::WalkConfig cfg = base_config(s.steps);
  cfg.track_tree = false;
  boundary::HypLimitAgg agg(s.measure.pres, sign);
  feed(s, cfg, agg);
  return agg.finalize();
}

boundary::SpeedReport run_speed(const WalkSetup& s) {
  walk::WalkConfig cfg = base_config(s.steps);
  cfg.track_tree = false;
  boundary::SpeedAgg agg(s.measure.pres);
  feed(s, cfg, agg);
  return agg.finalize();
}

boundary::LadderTailReport run_ladder(const WalkSetup& s, std::int64_t k_min,
                                      std::int64_t k_max, std::size_t min_obs) {
  walk::WalkConfig cfg;
  cfg.steps = s.steps;
  cfg.checkpoints = {s.steps};
  cfg.track_scalar = false;
  cfg.track_tree = false;
  cfg.dense_lambda = true;
  boundary::LadderAgg agg(s.steps, k_min, k_max);
  feed(s, cfg, agg);
  auto report = agg.finalize();
  if (report.gap_count < min_obs)
    fail(ErrorCode::InsufficientSamples,
         "only " + std::to_string(report.gap_count) + " record gaps, need " +
             std::to_string(min_obs));
  return report;
}

boundary::HittingReport run_hitting(const WalkSetup& s, int depth) {
  walk::WalkConfig cfg;
  cfg.steps = s.steps;
  cfg.checkpoints = {s.steps};
  cfg.track_scalar = false;
  cfg.prefix_depth = depth;
  cfg.dense_lambda = false;
  walk::Sampler sampler(s.measure);
  std::vector<proj::TreeEnd> ends;
  ends.reserve(s.trajectories);
  for (std::uint64_t i = 0; i < s.trajectories; ++i) {
    auto t = walk::run_trajectory(s.measure, sampler, s.master_seed, i, cfg);
    const auto& cp = t.cps.back();
    ends.push_back(proj::parse_end(s.measure.pres, cp.tree_prefix, true));
  }
  return boundary::hitting_histogram(s.measure.pres, ends, depth);
}

std::vector<EndSample> sample_ends(const walk::Measure& m, std::uint64_t master_seed,
                                   std::uint64_t stream_base, std::uint64_t count,
                                   std::int64_t steps, bool with_scalar) {
  walk::WalkConfig cfg;
  cfg.steps = steps;
  cfg.checkpoints = {steps};
  cfg.track_scalar = with_scalar;
  cfg.track_tree = false;
  cfg.dense_lambda = false;
  cfg.store_nf = true;
  walk::Sampler sampler(m);
  std::vector<EndSample> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    auto t = walk::run_trajectory(m, sampler, master_seed, stream_base + i, cfg);
    EndSample e;
    e.stream = stream_base + i;
    e.end.pres = m.pres;
    e.end.edges = proj::edges_of(proj::project_tree(*t.final_nf));
    e.end.truncated = true;
    const auto& cp = t.cps.back();
    e.lambda_final = cp.lambda;
    e.has_B = cp.has_B;
    if (cp.has_B) e.B_final = cp.B;
    out.push_back(std::move(e));
  }
  return out;
}

namespace {

std::size_t common_prefix(const std::vector<proj::TreeEdge>& a,
                          const std::vector<proj::TreeEdge>& b) {
  std::size_t j = 0;
  while (j < a.size() && j < b.size() && a[j] == b[j]) ++j;
  return j;
}

}  // namespace

StripAuditReport run_strip_audit(const WalkSetup& s, GaugeMode mode,
                                 const std::vector<std::int64_t>& schedule,
                                 std::int64_t end_steps, int bfs_cap) {
  if (schedule.empty()) fail(ErrorCode::ConfigError, "empty audit schedule");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
    if (schedule[i] <= 0 || schedule[i] >= schedule[i + 1])
      fail(ErrorCode::ConfigError, "audit schedule must be positive ascending");
  const core::Presentation& pres = s.measure.pres;

  // The audited trajectory, frozen at every scheduled step count.
  std::vector<NormalForm> zs;
  {
    walk::Sampler sampler(s.measure);
    auto rng = walk::Xoshiro256ss::seeded(s.master_seed, 0);
    NormalForm z = NormalForm::identity(pres);
    std::size_t si = 0;
    for (std::int64_t n = 1; si < schedule.size(); ++n) {
      z = core::multiply(z, s.measure.atoms[sampler.draw(rng)].g);
      if (n == schedule[si]) {
        zs.push_back(z);
        ++si;
      }
    }
  }

  std::vector<GaugeIndex> ks;
  std::int64_t radius_max = 0;
  for (const auto& z : zs) {
    GaugeIndex k = boundary::gauge_index(z, mode, bfs_cap);
    std::int64_t r = mode == GaugeMode::ZeroDrift ? k.hi * k.hi : k.hi;
    radius_max = std::max(radius_max, r);
    ks.push_back(k);
  }

  // The minus end comes from the reflected walk, the plus end from the walk
  // itself; take the first diverging pair.
  auto minus_ends = sample_ends(walk::reflect(s.measure), s.master_seed,
                                std::uint64_t(1) << 32, 4, end_steps, false);
  auto plus_ends = sample_ends(s.measure, s.master_seed, (std::uint64_t(1) << 32) + 4, 4,
                               end_steps, mode == GaugeMode::WordBall);
  std::size_t ei = 0, ej = 0, j0 = 0;
  bool found = false;
  for (std::size_t i = 0; i < minus_ends.size() && !found; ++i)
    for (std::size_t j = 0; j < plus_ends.size() && !found; ++j) {
      std::size_t c = common_prefix(minus_ends[i].end.edges, plus_ends[j].end.edges);
      if (c < minus_ends[i].end.edges.size() && c < plus_ends[j].end.edges.size()) {
        ei = i;
        ej = j;
        j0 = c;
        found = true;
      }
    }
  if (!found)
    fail(ErrorCode::DegenerateStrip, "sampled ends never diverge; walk may be too short");

  proj::TreeEnd minus = minus_ends[ei].end;
  proj::TreeEnd plus = plus_ends[ej].end;
  std::size_t need = j0 + static_cast<std::size_t>(radius_max) + 8;
  if (minus.edges.size() > need) minus.edges.resize(need);
  if (plus.edges.size() > need) plus.edges.resize(need);

  boundary::Strip strip = mode == GaugeMode::WordBall
                              ? boundary::build_strip(minus, plus, plus_ends[ej].B_final)
                              : boundary::build_strip(minus, plus);

  StripAuditReport rep;
  rep.mode = mode;
  rep.branch_depth = strip.branch_depth;
  rep.window = std::min<std::int64_t>(-strip.t_min, strip.t_max);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    StripAuditRow row;
    row.n = schedule[i];
    row.k = ks[i];
    row.at_hi = boundary::strip_gauge_count(strip, mode, ks[i].hi, bfs_cap);
    row.at_lo = ks[i].lo == ks[i].hi
                    ? row.at_hi
                    : boundary::strip_gauge_count(strip, mode, ks[i].lo, bfs_cap);
    Int c = row.at_hi.count_hi > 0 ? row.at_hi.count_hi : Int(1);
    row.ln_over_n = ln_int(c) / static_cast<double>(row.n);
    rep.all_bounds_ok = rep.all_bounds_ok && row.at_hi.bound_ok && row.at_lo.bound_ok;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

boundary::ConvergenceReport tree_convergence_from(const std::vector<walk::Trajectory>& ts,
                                                  int prefix_depth) {
  boundary::ConvergenceAgg agg(prefix_depth);
  for (const auto& t : ts) agg.add(t);
  return agg.finalize();
}

boundary::HypLimitReport hyp_limit_from(const std::vector<walk::Trajectory>& ts,
                                        const Presentation& pres, int sign) {
  boundary::HypLimitAgg agg(pres, sign);
  for (const auto& t : ts) agg.add(t);
  return agg.finalize();
}

boundary::SpeedReport speed_from(const std::vector<walk::Trajectory>& ts,
                                 const Presentation& pres) {
  boundary::SpeedAgg agg(pres);
  for (const auto& t : ts) agg.add(t);
  return agg.finalize();
}

}  // namespace bs::expt
