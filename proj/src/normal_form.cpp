#include "bs/normal_form.hpp"

#include <cctype>
#include <sstream>

namespace bs::core {

std::int64_t NormalForm::level() const {
  std::int64_t s = 0;
  for (const auto& syl : syls_) s += syl.dir;
  return s;
}

void NormalForm::mul_b(const Int& k) {
  if (k == 0) return;
  trailing_mut() += k;
}

void NormalForm::mul_a(int dir) {
  const long modulus = dir > 0 ? pres_.abs_q() : pres_.p;
  const long divisor = dir > 0 ? pres_.q : pres_.p;
  const long carry_mult = dir > 0 ? pres_.p : pres_.q;
  const Int t = trailing();
  Int s = euclid_mod(t, modulus);
  Int k = (t - s) / divisor;
  if (s == 0 && !syls_.empty() && syls_.back().dir == -dir) {
    syls_.pop_back();
    trailing_mut() += k * carry_mult;
  } else {
    trailing_mut() = s;
    syls_.push_back({dir, k * carry_mult});
  }
}

void NormalForm::mul_letter(const Letter& l) {
  if (l.gen == 'b') {
    mul_b(l.exp);
    return;
  }
  static const Int kMaxALoop = 1000000;
  Int n = abs_int(l.exp);
  if (n > kMaxALoop) fail(ErrorCode::ParseError, "a-power too large");
  int dir = l.exp >= 0 ? 1 : -1;
  for (Int i = 0; i < n; ++i) mul_a(dir);
}

NormalForm NormalForm::prefix() const {
  NormalForm r = *this;
  if (r.syls_.empty())
    r.lead_ = 0;
  else
    r.syls_.back().exp = 0;
  return r;
}

std::string NormalForm::to_string() const {
  if (is_identity()) return "1";
  std::ostringstream os;
  bool first = true;
  auto sep = [&] {
    if (!first) os << ' ';
    first = false;
  };
  if (lead_ != 0) {
    sep();
    os << "b^" << lead_.get_str();
  }
  for (const auto& syl : syls_) {
    sep();
    os << (syl.dir > 0 ? 'a' : 'A');
    if (syl.exp != 0) {
      os << ' ' << "b^" << syl.exp.get_str();
      // keep `first` false; sep already handled
    }
  }
  return os.str();
}

void NormalForm::validate() const {
  const long aq = pres_.abs_q();
  for (std::size_t i = 0; i < syls_.size(); ++i) {
    if (syls_[i].dir != 1 && syls_[i].dir != -1)
      fail(ErrorCode::InternalError, "bad syllable direction");
    const Int& r = exp_before(i);
    long bound = syls_[i].dir > 0 ? aq : pres_.p;
    if (r < 0 || r >= bound)
      fail(ErrorCode::InternalError,
           "coset representative out of range: " + r.get_str() + " before a-letter " +
               std::to_string(i) + " (bound " + std::to_string(bound) + ")");
    if (i > 0 && syls_[i - 1].dir == -syls_[i].dir && syls_[i - 1].exp == 0)
      fail(ErrorCode::InternalError, "pinch at syllable " + std::to_string(i));
  }
}

bool NormalForm::operator==(const NormalForm& o) const {
  if (!pres_.same_pair(o.pres_)) return false;
  if (lead_ != o.lead_ || syls_.size() != o.syls_.size()) return false;
  for (std::size_t i = 0; i < syls_.size(); ++i)
    if (syls_[i].dir != o.syls_[i].dir || syls_[i].exp != o.syls_[i].exp) return false;
  return true;
}

std::uint64_t NormalForm::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = hash_mix(h, static_cast<std::uint64_t>(pres_.p));
  h = hash_mix(h, static_cast<std::uint64_t>(pres_.q + (1 << 20)));
  h = hash_mix(h, hash_int(lead_));
  for (const auto& syl : syls_) {
    h = hash_mix(h, syl.dir > 0 ? 0x2545f4914f6cdd1dULL : 0x27d4eb2f165667c5ULL);
    h = hash_mix(h, hash_int(syl.exp));
  }
  return h;
}

Word parse_word(const std::string& text) {
  Word w;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip_ws();
  while (i < text.size()) {
    char c = text[i];
    if (c == '1') {
      ++i;
      skip_ws();
      continue;
    }
    if (c != 'a' && c != 'A' && c != 'b' && c != 'B')
      fail(ErrorCode::ParseError, std::string("unexpected character '") + c + "'");
    ++i;
    Int exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) fail(ErrorCode::ParseError, "missing exponent after '^'");
      exp = parse_int(text.substr(start, i - start));
    }
    if (c == 'A' || c == 'B') exp = -exp;
    w.push_back({(c == 'a' || c == 'A') ? 'a' : 'b', exp});
    skip_ws();
  }
  return w;
}

std::string word_to_string(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  bool first = true;
  for (const auto& l : w) {
    if (!first) os << ' ';
    first = false;
    if (l.exp == 1)
      os << l.gen;
    else if (l.exp == -1)
      os << (l.gen == 'a' ? 'A' : 'B');
    else
      os << l.gen << '^' << l.exp.get_str();
  }
  return os.str();
}

NormalForm reduce(const Presentation& pres, const Word& w) {
  NormalForm g = NormalForm::identity(pres);
  for (const auto& l : w) g.mul_letter(l);
  return g;
}

NormalForm reduce(const Presentation& pres, const std::string& text) {
  return reduce(pres, parse_word(text));
}

NormalForm multiply(const NormalForm& g, const NormalForm& h) {
  if (!g.pres().same_pair(h.pres()))
    fail(ErrorCode::PresentationMismatch, "elements from different presentations");
  NormalForm r = g;
  r.mul_b(h.lead());
  for (const auto& syl : h.syllables()) {
    r.mul_a(syl.dir);
    r.mul_b(syl.exp);
  }
  return r;
}

NormalForm invert(const NormalForm& g) {
  NormalForm r = NormalForm::identity(g.pres());
  const auto& syls = g.syllables();
  r.mul_b(-g.trailing());
  for (std::size_t i = syls.size(); i-- > 0;) {
    r.mul_a(-syls[i].dir);
    r.mul_b(-g.exp_before(i));
  }
  return r;
}

Word to_word(const NormalForm& g) {
  Word w;
  if (g.lead() != 0) w.push_back({'b', g.lead()});
  for (const auto& syl : g.syllables()) {
    w.push_back({'a', Int(syl.dir)});
    if (syl.exp != 0) w.push_back({'b', syl.exp});
  }
  return w;
}

}  // namespace bs::core
