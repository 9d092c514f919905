#include "bs/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>

namespace bs::geom {

MetricConstants metric_constants(const Presentation& pres) {
  if (!pres.hyperbolic_class())
    fail(ErrorCode::WrongClass, "metric constants need 1 < p < |q|");
  MetricConstants mc;
  mc.ell_a = std::log(static_cast<double>(pres.abs_q()) / pres.p);
  mc.ell_b = std::log((3.0 + std::sqrt(5.0)) / 2.0);
  mc.c = (pres.p + pres.abs_q() + 2) / 2;
  return mc;
}

double d_hyp(const HypPoint& z1, const HypPoint& z2) {
  Rat da = z1.A - z2.A;
  Rat db = z1.B - z2.B;
  Rat t = (da * da + db * db) / (2 * z1.A * z2.A);
  if (t == 0) return 0.0;
  double td = rat_to_double(t);
  if (td < 1e15)
    return std::log1p(td + std::sqrt(td * (td + 2.0)));
  // arcosh(1+t) = ln(2t) + O(1/t); 1/t is far below double precision here.
  return ln_rat(t) + M_LN2;
}

double d_eucl(const EuclidPoint& u, const EuclidPoint& v) {
  Int dx = u.x - v.x;
  Int dy = Int(u.y) - Int(v.y);
  Int s = dx * dx + dy * dy;
  if (s == 0) return 0.0;
  return std::exp(0.5 * ln_int(s));
}

std::int64_t d_tree(const TreeVertex& u, const TreeVertex& v) {
  if (!u.rep.pres().same_pair(v.rep.pres()))
    fail(ErrorCode::PresentationMismatch, "tree vertices from different presentations");
  return static_cast<std::int64_t>(multiply(invert(u.rep), v.rep).syllable_count());
}

double d_ends(const TreeEnd& x, const TreeEnd& y) {
  if (!x.pres.same_pair(y.pres))
    fail(ErrorCode::PresentationMismatch, "ends from different presentations");
  std::size_t j = 0;
  while (j < x.edges.size() && j < y.edges.size() && x.edges[j] == y.edges[j]) ++j;
  if (j < x.edges.size() && j < y.edges.size())
    return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(j, 1000)));
  // One record exhausted: divergence (or equality) sits beyond what was kept.
  if (x.edges.size() == y.edges.size()) {
    if (!x.truncated && !y.truncated) return 0.0;
    fail(ErrorCode::TruncationError,
         "ends agree to full recorded depth but at least one is truncated");
  }
  const TreeEnd& shorter = x.edges.size() < y.edges.size() ? x : y;
  if (shorter.truncated)
    fail(ErrorCode::TruncationError,
         "one record is a truncated prefix of the other; divergence unknown");
  return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(j, 1000)));
}

PlanePath make_plane_path(const Presentation& pres, std::vector<int> up_shifts,
                          std::vector<int> down_shifts) {
  for (int s : up_shifts)
    if (s < 0 || s >= pres.abs_q()) fail(ErrorCode::ParseError, "up shift out of range");
  for (int s : down_shifts)
    if (s < 0 || s >= pres.p) fail(ErrorCode::ParseError, "down shift out of range");
  return PlanePath{pres, std::move(up_shifts), std::move(down_shifts)};
}

TreeVertex plane_vertex(const PlanePath& path, std::int64_t lvl) {
  if (lvl < path.level_min() || lvl > path.level_max())
    fail(ErrorCode::TruncationError, "level outside the recorded path window");
  NormalForm g = NormalForm::identity(path.pres);
  if (lvl >= 0) {
    for (std::int64_t i = 0; i < lvl; ++i) {
      g.mul_b(path.up_shifts[static_cast<std::size_t>(i)]);
      g.mul_a(1);
    }
  } else {
    for (std::int64_t i = 0; i < -lvl; ++i) {
      g.mul_b(path.down_shifts[static_cast<std::size_t>(i)]);
      g.mul_a(-1);
    }
  }
  return proj::project_tree(g);
}

bool plane_contains(const PlanePath& path, const NormalForm& g) {
  std::int64_t lvl = g.level();
  if (lvl < path.level_min() || lvl > path.level_max()) return false;
  return proj::project_tree(g) == plane_vertex(path, lvl);
}

namespace {

// Neighbours of g inside the brick-wall subgraph over the path.
std::vector<NormalForm> plane_neighbours(const PlanePath& path, const NormalForm& g) {
  std::vector<NormalForm> out;
  out.reserve(4);
  for (int db : {1, -1}) {
    NormalForm n = g;
    n.mul_b(db);
    out.push_back(std::move(n));
  }
  std::int64_t lvl = g.level();
  for (int da : {1, -1}) {
    std::int64_t nl = lvl + da;
    if (nl < path.level_min() || nl > path.level_max()) continue;
    NormalForm n = g;
    n.mul_a(da);
    if (proj::project_tree(n) == plane_vertex(path, nl)) out.push_back(std::move(n));
  }
  return out;
}

}  // namespace

std::int64_t plane_distance(const PlanePath& path, const NormalForm& g,
                            const NormalForm& h, int cap) {
  if (!plane_contains(path, g) || !plane_contains(path, h))
    fail(ErrorCode::MembershipError, "endpoint not in the plane over the path");
  if (g == h) return 0;
  std::unordered_map<NormalForm, std::int64_t, core::NormalFormHash> dist;
  std::deque<NormalForm> queue;
  dist.emplace(g, 0);
  queue.push_back(g);
  while (!queue.empty()) {
    NormalForm cur = std::move(queue.front());
    queue.pop_front();
    std::int64_t d = dist.at(cur);
    if (d >= cap) continue;
    for (auto& n : plane_neighbours(path, cur)) {
      if (dist.count(n)) continue;
      if (n == h) return d + 1;
      dist.emplace(n, d + 1);
      queue.push_back(std::move(n));
    }
  }
  fail(ErrorCode::CapExceeded,
       "plane distance exceeds BFS cap " + std::to_string(cap));
}

BilipschitzReport bilipschitz_audit(const PlanePath& path, int radius) {
  if (path.level_max() < 2 * radius + 1 || -path.level_min() < 2 * radius + 1)
    fail(ErrorCode::TruncationError,
         "path window too small for the requested audit radius");
  const Presentation& pres = path.pres;
  MetricConstants mc = metric_constants(pres);

  NormalForm one = NormalForm::identity(pres);
  std::unordered_map<NormalForm, std::int64_t, core::NormalFormHash> dist;
  std::deque<NormalForm> queue;
  dist.emplace(one, 0);
  queue.push_back(one);
  std::vector<NormalForm> ball{one};
  while (!queue.empty()) {
    NormalForm cur = std::move(queue.front());
    queue.pop_front();
    std::int64_t d = dist.at(cur);
    if (d >= radius) continue;
    for (auto& n : plane_neighbours(path, cur)) {
      if (dist.count(n)) continue;
      dist.emplace(n, d + 1);
      ball.push_back(n);
      queue.push_back(std::move(n));
    }
  }

  std::vector<HypPoint> pts;
  pts.reserve(ball.size());
  for (const auto& g : ball) pts.push_back(proj::project_hyp(g));

  BilipschitzReport rep;
  const double tol = 1e-9;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    // One BFS from each source gives all pairwise plane distances (the pair
    // geodesic may leave the audit ball, so explore to 2*radius).
    std::unordered_map<NormalForm, std::int64_t, core::NormalFormHash> sd;
    std::deque<NormalForm> q2;
    sd.emplace(ball[i], 0);
    q2.push_back(ball[i]);
    while (!q2.empty()) {
      NormalForm cur = std::move(q2.front());
      q2.pop_front();
      std::int64_t d = sd.at(cur);
      if (d >= 2 * radius) continue;
      for (auto& n : plane_neighbours(path, cur)) {
        if (sd.count(n)) continue;
        sd.emplace(n, d + 1);
        q2.push_back(std::move(n));
      }
    }
    for (std::size_t j = i + 1; j < ball.size(); ++j) {
      auto it = sd.find(ball[j]);
      if (it == sd.end())
        fail(ErrorCode::InternalError, "plane ball pair unreachable within 2*radius");
      std::int64_t dp = it->second;
      double dh = d_hyp(pts[i], pts[j]);
      ++rep.pairs;
      if (dh > mc.ell_max() * static_cast<double>(dp) + tol) ++rep.forward_violations;
      double ratio = dh > 0 ? static_cast<double>(dp) / dh : 0.0;
      rep.max_ratio = std::max(rep.max_ratio, ratio);
      rep.rows.push_back({dp, dh, ratio});
    }
  }
  return rep;
}

std::vector<std::uint64_t> ball_growth(const Presentation& pres, int radius, int cap) {
  if (radius > cap)
    fail(ErrorCode::CapExceeded, "ball radius " + std::to_string(radius) +
                                     " exceeds cap " + std::to_string(cap));
  core::BallOracle oracle(pres);
  oracle.grow_to(radius);
  auto g = oracle.growth();
  g.resize(static_cast<std::size_t>(radius) + 1);
  return g;
}

std::pair<double, double> cayley_transform(const Rat& re, const Rat& im) {
  double x = rat_to_double(re);
  double y = rat_to_double(im);
  double n2 = x * x + y * y;
  if (!std::isfinite(n2) || n2 > 1e300) {
    // (z-i)/(z+i) -> 1 as |z| grows; the 2i/z correction is below 1 ulp here.
    return {1.0, 0.0};
  }
  double den = x * x + (y + 1.0) * (y + 1.0);
  return {(n2 - 1.0) / den, -2.0 * x / den};
}

std::pair<double, double> cayley_transform(const HypPoint& z) {
  return cayley_transform(z.B, z.A);
}

Int horosphere_count(const Presentation& pres, double n) {
  (void)pres;
  if (n < 0) return 0;
  double r2 = 2.0 * std::cosh(n) - 2.0;
  Int kmax = floor_rat(Rat(rat_from_double(std::sqrt(r2 > 0 ? r2 : 0.0))));
  return 2 * kmax + 1;
}

}  // namespace bs::geom
