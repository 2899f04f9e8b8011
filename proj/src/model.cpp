#include "grouplab/model.hpp"

#include <stdexcept>

namespace grouplab {

std::string torus_part_str(TorusPart t) {
  switch (t) {
    case TorusPart::Trivial: return "1";
    case TorusPart::Torsion: return "{+-1}";
    case TorusPart::Positive: return "Q>0";
    case TorusPart::Full: return "Q*";
  }
  throw std::logic_error("torus_part_str: bad enum value");
}

Element GroupModel::conj(const Element& a, const Element& g) const {
  return mul(mul(inv(g), a), g);
}

Element GroupModel::comm(const Element& a, const Element& b) const {
  return mul(inv(a), conj(a, b));
}

Element GroupModel::pow(const Element& a, long n) const {
  Element base = n < 0 ? inv(a) : a;
  unsigned long k = n < 0 ? static_cast<unsigned long>(-(n + 1)) + 1 : static_cast<unsigned long>(n);
  Element acc = identity();
  while (k > 0) {
    if (k & 1) acc = mul(acc, base);
    base = mul(base, base);
    k >>= 1;
  }
  return acc;
}

}  // namespace grouplab
