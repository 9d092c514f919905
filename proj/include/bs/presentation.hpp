#pragma once

#include <cstdint>
#include <string>

#include "bs/error.hpp"

namespace bs::core {

enum class GroupClass { Amenable, PosPos, PosNeg, EqualAbs };

inline const char* group_class_name(GroupClass c) {
  switch (c) {
    case GroupClass::Amenable: return "Amenable";
    case GroupClass::PosPos: return "PosPos";
    case GroupClass::PosNeg: return "PosNeg";
    case GroupClass::EqualAbs: return "EqualAbs";
  }
  return "?";
}

// BS(p,q) = <a, b | a b^p a^-1 = b^q>. All algebra runs on the normalized
// pair (1 <= p <= |q|), reached from the raw input by at most one swap
// (BS(p,q) ~ BS(q,p)) and at most one global sign flip (BS(p,q) ~ BS(-p,-q)).
struct Presentation {
  int raw_p = 0;
  int raw_q = 0;
  int p = 0;  // normalized, >= 1
  int q = 0;  // normalized, |q| >= p
  bool swapped = false;
  bool flipped = false;
  GroupClass cls = GroupClass::Amenable;

  int abs_q() const { return q < 0 ? -q : q; }
  bool same_pair(const Presentation& o) const { return p == o.p && q == o.q; }
  bool non_amenable() const { return cls != GroupClass::Amenable; }
  bool hyperbolic_class() const {
    return cls == GroupClass::PosPos || cls == GroupClass::PosNeg;
  }
};

Presentation classify(int p, int q);

std::string describe(const Presentation& pres);

}  // namespace bs::core
