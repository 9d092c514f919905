#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bs/presentation.hpp"
#include "bs/rational.hpp"

namespace bs::core {

// One letter of a free word over {a, b}: gen is 'a' or 'b', exp the power.
struct Letter {
  char gen;
  Int exp;
};
using Word = std::vector<Letter>;

Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

// Push-right Britton normal form b^{r0} a^{e1} b^{r1} ... a^{en} b^{rn}.
// Every exponent left of an a-letter is a canonical coset representative:
// 0 <= r < |q| before a, 0 <= r < p before a^-1 (this covers r0 when n >= 1).
// No zero exponent sits between opposite-sign a-letters. The trailing
// exponent rn is unconstrained and is the only one that can grow large.
class NormalForm {
 public:
  struct Syllable {
    int dir;  // +1 for a, -1 for a^-1
    Int exp;  // b-exponent following this a-letter
  };

  static NormalForm identity(const Presentation& pres) { return NormalForm(pres); }

  explicit NormalForm(const Presentation& pres) : pres_(pres) {}

  const Presentation& pres() const { return pres_; }
  bool is_identity() const { return syls_.empty() && lead_ == 0; }
  std::size_t syllable_count() const { return syls_.size(); }
  std::int64_t level() const;
  const Int& lead() const { return lead_; }
  const std::vector<Syllable>& syllables() const { return syls_; }
  const Int& trailing() const { return syls_.empty() ? lead_ : syls_.back().exp; }

  // Exponent immediately before a-letter i (0-based): r_{i}.
  const Int& exp_before(std::size_t i) const {
    return i == 0 ? lead_ : syls_[i - 1].exp;
  }

  void mul_b(const Int& k);
  void mul_a(int dir);
  void mul_letter(const Letter& l);

  // Coset representative mod <b>: same element with trailing exponent zeroed.
  NormalForm prefix() const;

  std::string to_string() const;
  void validate() const;  // throws InternalError on a broken invariant

  bool operator==(const NormalForm& o) const;
  bool operator!=(const NormalForm& o) const { return !(*this == o); }
  std::uint64_t hash() const;

 private:
  Int& trailing_mut() { return syls_.empty() ? lead_ : syls_.back().exp; }

  Presentation pres_;
  Int lead_ = 0;
  std::vector<Syllable> syls_;
};

struct NormalFormHash {
  std::size_t operator()(const NormalForm& g) const {
    return static_cast<std::size_t>(g.hash());
  }
};

NormalForm reduce(const Presentation& pres, const Word& w);
NormalForm reduce(const Presentation& pres, const std::string& text);
NormalForm multiply(const NormalForm& g, const NormalForm& h);
NormalForm invert(const NormalForm& g);
Word to_word(const NormalForm& g);

}  // namespace bs::core
