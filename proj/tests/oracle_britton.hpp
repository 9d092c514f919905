#pragma once

// Reference machinery used only by tests: a pinch-search Britton reducer over
// flat letter lists, sharing no state or code paths with the library's
// push-right normal form.

#include <gmpxx.h>

#include <random>
#include <string>
#include <vector>

#include "bs/normal_form.hpp"

namespace oracle {

struct Tok {
  char gen;       // 'a' (unit exponent, sign in exp) or 'b' (any exponent)
  mpz_class exp;  // for 'a' tokens always +1 or -1
};
using Toks = std::vector<Tok>;

inline Toks expand(const bs::core::Word& w) {
  Toks out;
  for (const auto& l : w) {
    if (l.gen == 'b') {
      out.push_back({'b', l.exp});
    } else {
      int s = l.exp < 0 ? -1 : 1;
      for (mpz_class i = 0; i < abs(l.exp); ++i) out.push_back({'a', s});
    }
  }
  return out;
}

inline bs::core::Word invert_word(const bs::core::Word& w) {
  bs::core::Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->gen, bs::Int(-it->exp)});
  return out;
}

// Merge adjacent b-powers, drop b^0, cancel adjacent a a^-1 pairs.
inline void simplify_free(Toks& v) {
  bool changed = true;
  while (changed) {
    changed = false;
    Toks out;
    for (const auto& t : v) {
      if (t.gen == 'b' && t.exp == 0) {
        changed = true;
        continue;
      }
      if (!out.empty() && out.back().gen == 'b' && t.gen == 'b') {
        out.back().exp += t.exp;
        changed = true;
        continue;
      }
      if (!out.empty() && out.back().gen == 'a' && t.gen == 'a' &&
          out.back().exp == -t.exp) {
        out.pop_back();
        changed = true;
        continue;
      }
      out.push_back(t);
    }
    v = std::move(out);
  }
}

// One pinch: a b^{m} a^-1 with p | m, or a^-1 b^{m} a with q | m.
inline bool pinch_once(Toks& v, long p, long q) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].gen != 'a') continue;
    std::size_t j = i + 1;
    mpz_class m = 0;
    if (j < v.size() && v[j].gen == 'b') {
      m = v[j].exp;
      ++j;
    }
    if (j >= v.size() || v[j].gen != 'a' || v[j].exp != -v[i].exp) continue;
    mpz_class repl;
    if (v[i].exp > 0) {
      if (m % p != 0) continue;
      repl = m / p * q;
    } else {
      if (m % q != 0) continue;
      repl = m / q * p;
    }
    Toks out(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(i));
    if (repl != 0) out.push_back({'b', repl});
    out.insert(out.end(), v.begin() + static_cast<std::ptrdiff_t>(j + 1), v.end());
    v = std::move(out);
    return true;
  }
  return false;
}

inline Toks britton_reduce(const bs::core::Word& w, long p, long q) {
  Toks v = expand(w);
  simplify_free(v);
  while (pinch_once(v, p, q)) simplify_free(v);
  return v;
}

// Britton's lemma: a reduced word with an a-letter is nontrivial; otherwise
// it is a bare b-power.
inline bool trivial(const bs::core::Word& w, long p, long q) {
  return britton_reduce(w, p, q).empty();
}

inline bool equal(const bs::core::Word& u, const bs::core::Word& v, long p, long q) {
  bs::core::Word w = u;
  bs::core::Word vi = invert_word(v);
  w.insert(w.end(), vi.begin(), vi.end());
  return trivial(w, p, q);
}

inline bs::core::Word random_word(std::mt19937_64& rng, int max_letters, int max_exp) {
  std::uniform_int_distribution<int> len(0, max_letters);
  std::uniform_int_distribution<int> gen(0, 1);
  std::uniform_int_distribution<int> exp(-max_exp, max_exp);
  bs::core::Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int e = exp(rng);
    if (e == 0) e = 1;
    w.push_back({gen(rng) ? 'a' : 'b', bs::Int(e)});
  }
  return w;
}

// Letter count after expanding multi-exponents (the "length" of criterion 1).
inline long word_letters(const bs::core::Word& w) {
  long n = 0;
  for (const auto& l : w) n += std::labs(static_cast<long>(mpz_get_si(l.exp.get_mpz_t())));
  return n;
}

}  // namespace oracle
