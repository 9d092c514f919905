#include "bs/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace bs::boundary {

namespace {

double quantile(std::vector<double> v, double q) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  double idx = q * (v.size() - 1);
  std::size_t lo = static_cast<std::size_t>(idx);
  std::size_t hi = std::min(lo + 1, v.size() - 1);
  double w = idx - lo;
  return v[lo] * (1 - w) + v[hi] * w;
}

}  // namespace

// --- ConvergenceAgg -------------------------------------------------------

void ConvergenceAgg::add(const walk::Trajectory& t) {
  if (t.cps.empty()) fail(ErrorCode::InternalError, "trajectory has no checkpoints");
  if (schedule_.empty()) {
    for (const auto& cp : t.cps) schedule_.push_back(cp.n);
  } else if (schedule_.size() != t.cps.size()) {
    fail(ErrorCode::InternalError, "trajectories use different schedules");
  }
  ConvergenceRow row;
  row.stream = t.stream;
  row.final_depth = t.cps.back().tree_depth;
  row.escaped = row.final_depth >= prefix_depth_;
  const std::string& final_prefix = t.cps.back().tree_prefix;
  std::size_t first_stable = t.cps.size() - 1;
  while (first_stable > 0 && t.cps[first_stable - 1].tree_prefix == final_prefix)
    --first_stable;
  row.stabilized_at = t.cps[first_stable].n;
  rows_.push_back(std::move(row));
}

ConvergenceReport ConvergenceAgg::finalize() const {
  ConvergenceReport rep;
  rep.prefix_depth = prefix_depth_;
  rep.schedule = schedule_;
  rep.rows = rows_;
  rep.frac_stable.assign(schedule_.size(), 0);
  if (rows_.empty()) return rep;
  for (std::size_t i = 0; i < schedule_.size(); ++i) {
    std::size_t cnt = 0;
    for (const auto& r : rows_)
      if (r.escaped && r.stabilized_at <= schedule_[i]) ++cnt;
    rep.frac_stable[i] = static_cast<double>(cnt) / rows_.size();
  }
  rep.final_fraction = rep.frac_stable.back();
  return rep;
}

// --- HypLimitAgg ----------------------------------------------------------

HypLimitAgg::HypLimitAgg(const Presentation& pres, int drift_sign)
    : pres_(pres), drift_sign_(drift_sign) {
  if (!pres.hyperbolic_class())
    fail(ErrorCode::WrongClass, "plane-limit diagnostics need a hyperbolic class");
  ln_ratio_ = std::log(static_cast<double>(pres.abs_q()) / pres.p);
}

void HypLimitAgg::add(const walk::Trajectory& t) {
  HypLimitRow row;
  row.stream = t.stream;
  const walk::Checkpoint& last = t.cps.back();
  row.lambda_final = last.lambda;
  row.ln_A_final = ln_ratio_ * static_cast<double>(last.lambda);
  if (last.has_B) {
    Rat absB = last.B < 0 ? Rat(-last.B) : last.B;
    row.abs_B_final = rat_to_double(absB);
    // compare against the half-time checkpoint when present
    const walk::Checkpoint* half = nullptr;
    for (const auto& cp : t.cps)
      if (cp.n * 2 == last.n || cp.n * 2 == last.n + 1) half = &cp;
    if (half && half->has_B) {
      Rat d = last.B - half->B;
      if (d < 0) d = -d;
      row.residual_half = rat_to_double(d);
    } else {
      row.residual_half = -1;
    }
  }
  rows_.push_back(std::move(row));
}

HypLimitReport HypLimitAgg::finalize() const {
  HypLimitReport rep;
  rep.drift_sign = drift_sign_;
  rep.rows = rows_;
  return rep;
}

double HypLimitReport::frac_ln_A_above(double threshold) const {
  if (rows.empty()) return 0;
  std::size_t cnt = 0;
  for (const auto& r : rows)
    if (r.ln_A_final > threshold) ++cnt;
  return static_cast<double>(cnt) / rows.size();
}

double HypLimitReport::frac_residual_below(double eps) const {
  if (rows.empty()) return 0;
  std::size_t cnt = 0;
  for (const auto& r : rows)
    if (r.residual_half >= 0 && r.residual_half < eps) ++cnt;
  return static_cast<double>(cnt) / rows.size();
}

double HypLimitReport::median_abs_B() const {
  std::vector<double> v;
  for (const auto& r : rows) v.push_back(r.abs_B_final);
  return quantile(v, 0.5);
}

// --- SpeedAgg ---------------------------------------------------------------

SpeedAgg::SpeedAgg(const Presentation& pres) : pres_(pres) {
  if (!pres.hyperbolic_class())
    fail(ErrorCode::WrongClass, "speed profile needs a hyperbolic class");
}

void SpeedAgg::add(const walk::Trajectory& t) {
  if (ns_.empty()) {
    for (const auto& cp : t.cps) ns_.push_back(cp.n);
    samples_.resize(ns_.size());
  } else if (ns_.size() != t.cps.size()) {
    fail(ErrorCode::InternalError, "trajectories use different schedules");
  }
  PowCache powp(pres_.p), powq(pres_.abs_q());
  for (std::size_t i = 0; i < t.cps.size(); ++i) {
    const walk::Checkpoint& cp = t.cps[i];
    if (!cp.has_B) fail(ErrorCode::InternalError, "speed profile needs the B track");
    std::int64_t lam = cp.lambda;
    Rat A = lam >= 0 ? Rat(powq.get(static_cast<std::size_t>(lam)),
                           powp.get(static_cast<std::size_t>(lam)))
                     : Rat(powp.get(static_cast<std::size_t>(-lam)),
                           powq.get(static_cast<std::size_t>(-lam)));
    A.canonicalize();
    double d = geom::d_hyp(proj::hyp_identity(), proj::HypPoint{A, cp.B, cp.sign});
    samples_[i].push_back(d / static_cast<double>(cp.n));
  }
}

SpeedReport SpeedAgg::finalize() const {
  SpeedReport rep;
  rep.ns = ns_;
  for (const auto& col : samples_) {
    rep.q25.push_back(quantile(col, 0.25));
    rep.median.push_back(quantile(col, 0.5));
    rep.q75.push_back(quantile(col, 0.75));
  }
  return rep;
}

// --- LadderAgg ----------------------------------------------------------------

LadderAgg::LadderAgg(std::int64_t steps, std::int64_t k_min, std::int64_t k_max)
    : steps_(steps), k_min_(k_min), k_max_(k_max) {
  if (k_min_ < 1 || k_max_ <= k_min_ || k_max_ >= steps_)
    fail(ErrorCode::ConfigError, "record-gap window must satisfy 1 <= k_min < k_max < steps");
}

void LadderAgg::add(const walk::Trajectory& t) {
  if (t.lambda.empty())
    fail(ErrorCode::ConfigError, "record-gap analysis needs the dense level track");
  std::vector<std::int64_t> taus = walk::ladder_times(t.lambda);
  for (std::size_t i = 0; i < taus.size(); ++i) {
    if (taus[i] > steps_ - k_max_) break;  // starts past the censor-free window
    std::int64_t gap;
    if (i + 1 < taus.size())
      gap = taus[i + 1] - taus[i];
    else
      gap = k_max_ + 1;  // no further record before the horizon; exceeds every k
    gaps_.push_back(gap);
  }
}

LadderTailReport LadderAgg::finalize(int grid_points) const {
  LadderTailReport rep;
  rep.gap_count = gaps_.size();
  if (gaps_.empty()) return rep;
  std::vector<std::int64_t> ks;
  for (int j = 0; j < grid_points; ++j) {
    double f = grid_points == 1 ? 0 : static_cast<double>(j) / (grid_points - 1);
    double kd = static_cast<double>(k_min_) *
                std::pow(static_cast<double>(k_max_) / k_min_, f);
    std::int64_t k = std::llround(kd);
    if (ks.empty() || k > ks.back()) ks.push_back(k);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t m = 0;
  for (std::int64_t k : ks) {
    std::size_t over = 0;
    for (std::int64_t g : gaps_)
      if (g > k) ++over;
    double s = static_cast<double>(over) / gaps_.size();
    rep.ks.push_back(k);
    rep.survival.push_back(s);
    if (s > 0) {
      double x = std::log(static_cast<double>(k)), y = std::log(s);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
  }
  if (m >= 2) rep.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  return rep;
}

// --- hitting histogram ----------------------------------------------------------

HittingReport hitting_histogram(const Presentation& pres,
                                const std::vector<proj::TreeEnd>& ends, int depth) {
  if (depth < 1) fail(ErrorCode::ConfigError, "histogram depth must be >= 1");
  HittingReport rep;
  rep.depth = depth;
  rep.total = ends.size();
  rep.by_depth.resize(depth);
  rep.max_mass.assign(depth, 0);

  std::vector<std::map<std::string, std::uint64_t>> hist(depth);
  for (const auto& e : ends) {
    if (static_cast<int>(e.edges.size()) < depth)
      fail(ErrorCode::DepthTooDeep, "an end is shallower than the histogram depth");
    std::string key;
    for (int d = 0; d < depth; ++d) {
      if (d) key += ' ';
      key += e.edges[d].up ? 'u' : 'd';
      key += std::to_string(e.edges[d].shift);
      ++hist[d][key];
    }
  }

  for (int d = 0; d < depth; ++d) {
    for (const auto& [k, c] : hist[d]) {
      rep.by_depth[d].push_back({k, c});
      rep.max_mass[d] = std::max(
          rep.max_mass[d], ends.empty() ? 0.0 : static_cast<double>(c) / ends.size());
    }
  }

  // every depth-(d+1) cell must sit inside its depth-d parent with matching mass
  for (int d = 0; d + 1 < depth; ++d) {
    std::map<std::string, std::uint64_t> folded;
    for (const auto& cell : rep.by_depth[d + 1]) {
      std::size_t cut = cell.prefix.rfind(' ');
      folded[cell.prefix.substr(0, cut)] += cell.count;
    }
    for (const auto& cell : rep.by_depth[d])
      if (folded[cell.prefix] != cell.count) rep.refinement_consistent = false;
  }

  std::size_t possible = static_cast<std::size_t>(pres.p + pres.abs_q());
  rep.depth1_possible = possible;
  rep.depth1_zero_cells = possible - rep.by_depth[0].size();
  return rep;
}

}  // namespace bs::boundary
