#include "bs/presentation.hpp"

#include <cstdlib>
#include <sstream>

namespace bs::core {

Presentation classify(int p, int q) {
  if (p == 0 || q == 0) fail(ErrorCode::ZeroParameter, "p and q must be non-zero");
  Presentation pres;
  pres.raw_p = p;
  pres.raw_q = q;
  if (std::abs(p) > std::abs(q)) {
    std::swap(p, q);
    pres.swapped = true;
  }
  if (p < 0) {
    p = -p;
    q = -q;
    pres.flipped = true;
  }
  pres.p = p;
  pres.q = q;
  int aq = std::abs(q);
  if (p == 1 || aq == 1)
    pres.cls = GroupClass::Amenable;
  else if (p == aq)
    pres.cls = GroupClass::EqualAbs;
  else if (q > 0)
    pres.cls = GroupClass::PosPos;
  else
    pres.cls = GroupClass::PosNeg;
  return pres;
}

std::string describe(const Presentation& pres) {
  std::ostringstream os;
  os << "BS(" << pres.raw_p << "," << pres.raw_q << ")";
  if (pres.swapped || pres.flipped) os << " ~ BS(" << pres.p << "," << pres.q << ")";
  os << " class=" << group_class_name(pres.cls)
     << " amenable=" << (pres.cls == GroupClass::Amenable ? "yes" : "no");
  return os.str();
}

}  // namespace bs::core
