#include "bs/strip.hpp"

#include <algorithm>
#include <cmath>

#include "bs/geometry.hpp"

namespace bs::boundary {

using core::NormalForm;
using core::Presentation;
using proj::TreeEdge;
using proj::TreeEnd;

namespace {

struct FoldState {
  std::int64_t level = 0;
  proj::HypPoint z = proj::hyp_identity();
  Int ex = 0;
  int es = 1;
  std::int64_t letters = 0;
  Int corr = 0;
};

void apply_edge(const Presentation& pres, FoldState& st, const TreeEdge& e) {
  int dir = e.up ? 1 : -1;
  if (pres.hyperbolic_class()) {
    st.z = proj::hyp_compose(st.z, proj::hyp_gen_b(pres, Int(e.shift)));
    st.z = proj::hyp_compose(st.z, proj::hyp_gen_a(pres, dir));
  }
  if (pres.cls == core::GroupClass::EqualAbs) {
    st.ex += Int(static_cast<long>(st.es) * e.shift);
    st.es *= pres.q < 0 ? -1 : 1;
  }
  long modulus = dir > 0 ? pres.abs_q() : pres.p;
  long divisor = dir > 0 ? pres.q : pres.p;
  long carry = dir > 0 ? pres.p : pres.q;
  Int eb = balanced_mod(Int(e.shift) - st.corr, modulus);
  st.letters += to_i64(abs_int(eb)) + 1;
  Int k = (st.corr + eb - e.shift) / divisor;
  st.corr = k * carry;
  st.level += dir;
}

CosetCell cell_from(const FoldState& st, std::int64_t t, std::int64_t depth) {
  CosetCell c;
  c.t = t;
  c.depth = depth;
  c.level = st.level;
  c.A = st.z.A;
  c.B = st.z.B;
  c.sign = st.z.sign;
  c.ex = st.ex;
  c.esign = st.es;
  c.edge_letters = st.letters;
  c.corr = st.corr;
  return c;
}

Strip build_impl(const TreeEnd& minus, const TreeEnd& plus, bool has_rplus,
                 const Rat& r_plus) {
  if (!minus.pres.same_pair(plus.pres))
    fail(ErrorCode::PresentationMismatch, "strip ends from different groups");
  const Presentation& pres = minus.pres;

  std::size_t j = 0;
  while (j < minus.edges.size() && j < plus.edges.size() &&
         minus.edges[j] == plus.edges[j])
    ++j;
  if (j == minus.edges.size() || j == plus.edges.size())
    fail(ErrorCode::DegenerateStrip,
         "recorded ends do not diverge within their common window");

  Strip s;
  s.pres = pres;
  s.minus = minus;
  s.plus = plus;
  s.branch_depth = j;
  s.has_rplus = has_rplus;
  s.r_plus = r_plus;
  s.t_min = -static_cast<std::int64_t>(minus.edges.size() - j);
  s.t_max = static_cast<std::int64_t>(plus.edges.size() - j);

  FoldState branch;
  for (std::size_t i = 0; i < j; ++i) apply_edge(pres, branch, minus.edges[i]);

  std::vector<CosetCell> minus_cells;
  FoldState st = branch;
  for (std::size_t i = j; i < minus.edges.size(); ++i) {
    apply_edge(pres, st, minus.edges[i]);
    std::int64_t off = static_cast<std::int64_t>(i - j) + 1;
    minus_cells.push_back(cell_from(st, -off, static_cast<std::int64_t>(j) + off));
  }

  std::vector<CosetCell> plus_cells;
  st = branch;
  for (std::size_t i = j; i < plus.edges.size(); ++i) {
    apply_edge(pres, st, plus.edges[i]);
    std::int64_t off = static_cast<std::int64_t>(i - j) + 1;
    plus_cells.push_back(cell_from(st, off, static_cast<std::int64_t>(j) + off));
  }

  s.cells.reserve(minus_cells.size() + 1 + plus_cells.size());
  for (auto it = minus_cells.rbegin(); it != minus_cells.rend(); ++it)
    s.cells.push_back(*it);
  s.cells.push_back(cell_from(branch, 0, static_cast<std::int64_t>(j)));
  for (auto& c : plus_cells) s.cells.push_back(std::move(c));
  return s;
}

}  // namespace

Strip build_strip(const TreeEnd& minus, const TreeEnd& plus) {
  return build_impl(minus, plus, false, Rat(0));
}

Strip build_strip(const TreeEnd& minus, const TreeEnd& plus, const Rat& r_plus) {
  return build_impl(minus, plus, true, r_plus);
}

const CosetCell& Strip::cell_at(std::int64_t t) const {
  if (t < t_min || t > t_max)
    fail(ErrorCode::InternalError, "strip coordinate outside the recorded window");
  return cells[static_cast<std::size_t>(t - t_min)];
}

StripLocate locate_coset(const Strip& s, const NormalForm& g) {
  if (!g.pres().same_pair(s.pres))
    fail(ErrorCode::PresentationMismatch, "element from a different group");
  const auto& syls = g.syllables();
  const std::size_t L = syls.size();
  const std::size_t j = s.branch_depth;

  auto edge_at = [&](std::size_t i) -> TreeEdge {
    return TreeEdge{syls[i].dir > 0, static_cast<int>(g.exp_before(i).get_si())};
  };

  StripLocate loc;
  if (L < j) return loc;
  for (std::size_t i = 0; i < j; ++i)
    if (!(edge_at(i) == s.minus.edges[i])) return loc;
  if (L == j) {
    loc.on_path = true;
    loc.t = 0;
    return loc;
  }
  for (int side = 0; side < 2; ++side) {
    const auto& edges = side == 0 ? s.minus.edges : s.plus.edges;
    std::size_t upto = std::min(L, edges.size());
    bool match = true;
    for (std::size_t i = j; i < upto; ++i)
      if (!(edge_at(i) == edges[i])) {
        match = false;
        break;
      }
    if (!match) continue;
    if (L > edges.size()) {
      loc.truncated = true;  // follows the branch past the recorded window
      return loc;
    }
    loc.on_path = true;
    loc.t = side == 0 ? -static_cast<std::int64_t>(L - j)
                      : static_cast<std::int64_t>(L - j);
    return loc;
  }
  return loc;
}

std::vector<Int> horizontal_minimizers(const Strip& s, const CosetCell& cell) {
  if (!s.has_rplus)
    fail(ErrorCode::ConfigError, "strip has no horizontal target line");
  if (!s.pres.hyperbolic_class())
    fail(ErrorCode::WrongClass, "horizontal minimizers need a hyperbolic class");
  Rat denom = cell.sign > 0 ? cell.A : Rat(-cell.A);
  Rat xstar = Rat(s.r_plus - cell.B) / denom;
  Int fl = floor_rat(xstar);
  Rat frac = xstar - Rat(fl);
  if (frac < Rat(1, 2)) return {fl};
  if (frac > Rat(1, 2)) return {Int(fl + 1)};
  return {fl, Int(fl + 1)};
}

bool strip_member(const Strip& s, const NormalForm& g) {
  StripLocate loc = locate_coset(s, g);
  if (loc.truncated)
    fail(ErrorCode::TruncationError,
         "element follows a recorded end past the stored window");
  if (!loc.on_path) return false;
  if (!s.has_rplus) return true;
  const CosetCell& cell = s.cell_at(loc.t);
  for (const Int& m : horizontal_minimizers(s, cell))
    if (g.trailing() == m) return true;
  return false;
}

namespace {

std::int64_t ceil_sqrt_i64(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r < n) ++r;
  while (r > 0 && (r - 1) * (r - 1) >= n) --r;
  return r;
}

double hyp_radius(const NormalForm& g) {
  return geom::d_hyp(proj::hyp_identity(), proj::project_hyp(g));
}

double eucl_radius(const NormalForm& g) {
  return geom::d_eucl(proj::euclid_identity(), proj::project_euclid(g));
}

}  // namespace

bool gauge_member(const NormalForm& g, GaugeMode mode, std::int64_t k, int bfs_cap) {
  const double tol = 1e-9;
  switch (mode) {
    case GaugeMode::WordBall: {
      core::WordLengthBounds wl = core::word_length(g, bfs_cap);
      if (wl.upper <= k) return true;
      if (wl.lower > k) return false;
      fail(ErrorCode::OracleUnresolved,
           "word length of " + g.to_string() + " only resolves to [" +
               std::to_string(wl.lower) + "," + std::to_string(wl.upper) + "]");
    }
    case GaugeMode::ZeroDrift: {
      if (!g.pres().hyperbolic_class())
        fail(ErrorCode::WrongClass, "plane-ball gauge needs a hyperbolic class");
      return hyp_radius(g) <= static_cast<double>(k) + tol &&
             static_cast<std::int64_t>(g.syllable_count()) <= k * k;
    }
    case GaugeMode::EqualAbs: {
      if (g.pres().cls != core::GroupClass::EqualAbs)
        fail(ErrorCode::WrongClass, "translation gauge needs the equal-modulus class");
      return eucl_radius(g) <= static_cast<double>(k) + tol &&
             static_cast<std::int64_t>(g.syllable_count()) <= k;
    }
  }
  fail(ErrorCode::InternalError, "unknown gauge mode");
}

GaugeIndex gauge_index(const NormalForm& g, GaugeMode mode, int bfs_cap) {
  const double tol = 1e-9;
  GaugeIndex idx;
  switch (mode) {
    case GaugeMode::WordBall: {
      core::WordLengthBounds wl = core::word_length(g, bfs_cap);
      idx.lo = wl.lower;
      idx.hi = wl.upper;
      return idx;
    }
    case GaugeMode::ZeroDrift: {
      if (!g.pres().hyperbolic_class())
        fail(ErrorCode::WrongClass, "plane-ball gauge needs a hyperbolic class");
      auto k1 = static_cast<std::int64_t>(std::ceil(hyp_radius(g) - tol));
      std::int64_t k2 =
          ceil_sqrt_i64(static_cast<std::int64_t>(g.syllable_count()));
      idx.lo = idx.hi = std::max(k1, k2);
      return idx;
    }
    case GaugeMode::EqualAbs: {
      if (g.pres().cls != core::GroupClass::EqualAbs)
        fail(ErrorCode::WrongClass, "translation gauge needs the equal-modulus class");
      auto k1 = static_cast<std::int64_t>(std::ceil(eucl_radius(g) - tol));
      idx.lo = idx.hi =
          std::max(k1, static_cast<std::int64_t>(g.syllable_count()));
      return idx;
    }
  }
  fail(ErrorCode::InternalError, "unknown gauge mode");
}

namespace {

void require_window(const Strip& s, std::int64_t radius) {
  auto avail_minus = static_cast<std::int64_t>(s.minus.edges.size());
  auto avail_plus = static_cast<std::int64_t>(s.plus.edges.size());
  if (radius > avail_minus && s.minus.truncated)
    fail(ErrorCode::TruncationError,
         "gauge radius " + std::to_string(radius) + " exceeds the recorded depth " +
             std::to_string(avail_minus) + " of the minus end");
  if (radius > avail_plus && s.plus.truncated)
    fail(ErrorCode::TruncationError,
         "gauge radius " + std::to_string(radius) + " exceeds the recorded depth " +
             std::to_string(avail_plus) + " of the plus end");
}

// #{ integer m : |c0 + c1*m| <= xmax }, c1 != 0, all exact
Int count_band(const Int& c0, const Int& c1, const Int& xmax) {
  if (xmax < 0) return 0;
  Int lo_num = -xmax - c0, hi_num = xmax - c0;
  if (c1 < 0) std::swap(lo_num, hi_num);
  Int c1a = abs_int(c1);
  Int hi, lo;
  mpz_fdiv_q(hi.get_mpz_t(), hi_num.get_mpz_t(), c1a.get_mpz_t());
  mpz_cdiv_q(lo.get_mpz_t(), lo_num.get_mpz_t(), c1a.get_mpz_t());
  if (hi < lo) return 0;
  return Int(hi - lo + 1);
}

// #{ m : (B + sign*A*m)^2 <= r2 } for rational A, B, r2
Int count_quadratic(const Rat& A, const Rat& B, int sign, const Rat& r2) {
  if (r2 < 0) return 0;
  // X(m) = nb*da + sign*na*db*m must satisfy dr * X^2 <= nr * (db*da)^2
  Int nb = B.get_num(), db = B.get_den();
  Int na = A.get_num(), da = A.get_den();
  Int nr = r2.get_num(), dr = r2.get_den();
  Int rhs = nr * db * db * da * da;
  Int cap;
  mpz_fdiv_q(cap.get_mpz_t(), rhs.get_mpz_t(), dr.get_mpz_t());
  if (cap < 0) return 0;
  Int xmax = isqrt(cap);
  Int c0 = nb * da;
  Int c1 = (sign > 0 ? Int(na * db) : Int(-na * db));
  return count_band(c0, c1, xmax);
}

}  // namespace

StripCount strip_gauge_count(const Strip& s, GaugeMode mode, std::int64_t k,
                             int bfs_cap) {
  if (k < 0) fail(ErrorCode::ConfigError, "gauge index must be >= 0");
  const Presentation& pres = s.pres;
  StripCount out;
  out.k = k;
  out.count_lo = 0;
  out.count_hi = 0;

  switch (mode) {
    case GaugeMode::WordBall: {
      if (!s.has_rplus)
        fail(ErrorCode::ConfigError, "word-ball counting needs the horizontal line");
      if (!pres.hyperbolic_class())
        fail(ErrorCode::WrongClass, "word-ball counting needs a hyperbolic class");
      require_window(s, k);
      geom::MetricConstants mc = geom::metric_constants(pres);
      core::BallOracle oracle(pres);
      for (const CosetCell& cell : s.cells) {
        if (cell.depth > k) continue;
        for (const Int& m : horizontal_minimizers(s, cell)) {
          std::int64_t lo = std::max<std::int64_t>(std::llabs(cell.level), cell.depth);
          Rat shift = cell.A * Rat(m);
          Rat Bm = cell.sign > 0 ? Rat(cell.B + shift) : Rat(cell.B - shift);
          double dh =
              geom::d_hyp(proj::hyp_identity(), proj::HypPoint{cell.A, Bm, cell.sign});
          lo = std::max<std::int64_t>(
              lo, static_cast<std::int64_t>(std::ceil(dh / mc.ell_max() - 1e-9)));
          Int up_int = cell.edge_letters + core::compressed_b_length(pres, Int(m - cell.corr));
          std::int64_t up = to_i64_saturate(up_int);
          if (lo <= bfs_cap && lo <= k && k < up) {
            // resolve the straggler exactly
            NormalForm g = NormalForm::identity(pres);
            const auto& edges = cell.t <= 0 ? s.minus.edges : s.plus.edges;
            for (std::int64_t i = 0; i < cell.depth; ++i) {
              g.mul_b(Int(edges[static_cast<std::size_t>(i)].shift));
              g.mul_a(edges[static_cast<std::size_t>(i)].up ? 1 : -1);
            }
            g.mul_b(m);
            core::WordLengthBounds wl = core::word_length(g, bfs_cap, &oracle);
            lo = wl.lower;
            up = wl.upper;
          }
          if (up < lo)
            fail(ErrorCode::InternalError, "witness shorter than the lower bound");
          if (up <= k) {
            out.count_lo += 1;
            out.count_hi += 1;
          } else if (lo <= k) {
            out.count_hi += 1;
          }
        }
      }
      out.bound = Int(2 * (2 * k + 1));
      break;
    }
    case GaugeMode::ZeroDrift: {
      if (!pres.hyperbolic_class())
        fail(ErrorCode::WrongClass, "plane-ball counting needs a hyperbolic class");
      std::int64_t radius = k * k;
      require_window(s, radius);
      double chm = std::cosh(static_cast<double>(k)) - 1;
      Rat chm_lo = rat_from_double(chm * (1 - 1e-12));
      Rat chm_hi = rat_from_double(chm * (1 + 1e-12));
      if (chm_lo < 0) chm_lo = 0;
      for (const CosetCell& cell : s.cells) {
        if (cell.depth > radius) continue;
        Rat gap = Rat(cell.A - 1) * Rat(cell.A - 1);
        Rat r2_lo = Rat(2 * cell.A * chm_lo) - gap;
        Rat r2_hi = Rat(2 * cell.A * chm_hi) - gap;
        out.count_lo += count_quadratic(cell.A, cell.B, cell.sign, r2_lo);
        out.count_hi += count_quadratic(cell.A, cell.B, cell.sign, r2_hi);
      }
      // cells <= 2k^2+1 on a geodesic; a nonempty window forces the vertical
      // scale above 1/(2(1+chm)), so the width is at most 2(1+chm) each way
      Int per = Int(4 * (ceil_rat(chm_hi) + 1) + 1);
      out.bound = Int((2 * Int(radius) + 1) * per);
      break;
    }
    case GaugeMode::EqualAbs: {
      if (pres.cls != core::GroupClass::EqualAbs)
        fail(ErrorCode::WrongClass, "translation counting needs the equal-modulus class");
      require_window(s, k);
      for (const CosetCell& cell : s.cells) {
        if (cell.depth > k) continue;
        std::int64_t w2 = k * k - cell.level * cell.level;
        if (w2 < 0) continue;
        Int xm = isqrt(Int(w2));
        Int cnt = Int(2 * xm + 1);
        out.count_lo += cnt;
        out.count_hi += cnt;
      }
      out.bound = Int((2 * Int(k) + 1) * (2 * Int(k) + 1));
      break;
    }
  }
  out.bound_ok = out.count_hi <= out.bound;
  if (!out.bound_ok)
    fail(ErrorCode::InternalError, "count exceeded its proved ceiling");
  return out;
}

}  // namespace bs::boundary
