#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "bs/error.hpp"

namespace bs {

using Int = mpz_class;
using Rat = mpq_class;

// Euclidean remainder in [0, m), m > 0.
inline Int euclid_mod(const Int& x, long m) {
  Int r = x % m;
  if (r < 0) r += m;
  return r;
}

// Balanced remainder in (-m/2, m/2], m > 0.
inline Int balanced_mod(const Int& x, long m) {
  Int r = euclid_mod(x, m);
  if (2 * r > m) r -= m;
  return r;
}

inline Int abs_int(const Int& x) { return x >= 0 ? x : Int(-x); }

// Powers of a fixed small base, grown on demand.
class PowCache {
 public:
  explicit PowCache(long base = 2) : base_(base) { pows_.push_back(1); }
  void reset(long base) {
    base_ = base;
    pows_.assign(1, Int(1));
  }
  const Int& get(std::size_t e) {
    while (pows_.size() <= e) pows_.push_back(pows_.back() * base_);
    return pows_[e];
  }
  long base() const { return base_; }

 private:
  long base_;
  std::vector<Int> pows_;
};

inline std::uint64_t hash_mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

inline std::uint64_t hash_int(const Int& x) {
  std::uint64_t h = x < 0 ? 0x94d049bb133111ebULL : 0xbf58476d1ce4e5b9ULL;
  const mpz_srcptr z = x.get_mpz_t();
  std::size_t n = mpz_size(z);
  for (std::size_t i = 0; i < n; ++i) h = hash_mix(h, mpz_getlimbn(z, i));
  return h;
}

// ln of a positive big integer, exact to double precision via 2^e scaling.
inline double ln_int(const Int& x) {
  if (x <= 0) fail(ErrorCode::InternalError, "ln_int of non-positive value");
  signed long e = 0;
  double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log(m) + static_cast<double>(e) * M_LN2;
}

inline double ln_rat(const Rat& x) {
  if (x <= 0) fail(ErrorCode::InternalError, "ln_rat of non-positive value");
  return ln_int(Int(x.get_num())) - ln_int(Int(x.get_den()));
}

// Rational -> double that survives exponents beyond double range by clamping
// to +-inf; callers needing magnitudes use ln_rat instead.
inline double rat_to_double(const Rat& x) {
  if (x == 0) return 0.0;
  signed long en = 0, ed = 0;
  double mn = mpz_get_d_2exp(&en, x.get_num().get_mpz_t());
  double md = mpz_get_d_2exp(&ed, x.get_den().get_mpz_t());
  long e = en - ed;
  if (e > 1040) return mn > 0 ? INFINITY : -INFINITY;
  if (e < -1080) return 0.0;
  return (mn / md) * std::ldexp(1.0, static_cast<int>(e));
}

// Exact dyadic rational from a double (doubles are dyadic).
inline Rat rat_from_double(double d) {
  if (!std::isfinite(d)) fail(ErrorCode::InternalError, "rat_from_double of non-finite");
  Rat r;
  mpq_set_d(r.get_mpq_t(), d);
  return r;
}

inline Int floor_rat(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline Int ceil_rat(const Rat& x) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return q;
}

inline Int round_nearest_rat(const Rat& x) {
  // Round half up; exact ties are detected by callers comparing both sides.
  Rat shifted = x + Rat(1, 2);
  return floor_rat(shifted);
}

inline std::string rat_to_string(const Rat& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Int parse_int(const std::string& s) {
  Int v;
  if (mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0)
    fail(ErrorCode::ParseError, "bad integer '" + s + "'");
  return v;
}

// Accepts "num/den" or "num".
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(parse_int(s));
  Int num = parse_int(s.substr(0, slash));
  Int den = parse_int(s.substr(slash + 1));
  if (den == 0) fail(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double log2_rat(const Rat& x) { return ln_rat(x) / M_LN2; }

// Integer square root (floor).
inline Int isqrt(const Int& x) {
  if (x < 0) fail(ErrorCode::InternalError, "isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p())
    fail(ErrorCode::InternalError, "integer out of int64 range: " + x.get_str());
  return static_cast<std::int64_t>(x.get_si());
}

// Saturating conversion for quantities (like word-length upper bounds) that
// can be astronomically large but only ever compared against small values.
inline std::int64_t to_i64_saturate(const Int& x) {
  static const Int kMax = Int(1) << 62;
  if (x > kMax) return static_cast<std::int64_t>(1) << 62;
  if (x < -kMax) return -(static_cast<std::int64_t>(1) << 62);
  return static_cast<std::int64_t>(x.get_si());
}

}  // namespace bs
