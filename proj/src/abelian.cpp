#include "grouplab/abelian.hpp"

#include <sstream>

namespace grouplab {

namespace {

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

mpz_class pow_z(long p, int j) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(j));
  return r;
}

int valuation(mpz_class n, long p) {
  if (sgn(n) == 0) throw std::invalid_argument("valuation of 0");
  int v = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= p;
    ++v;
  }
  return v;
}

mpz_class inverse_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw std::invalid_argument("inverse_mod: not invertible");
  return r;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

// fractional part in [0,1)
Rational frac(const Rational& x) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), x.num().get_mpz_t(), x.den().get_mpz_t());
  return x - Rational(q);
}

std::string tuple_str(const std::vector<Rational>& v) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

AbelianBlock AbelianBlock::parse(const std::string& s) {
  AbelianBlock b;
  if (s == "Q") {
    b.kind = Q;
    return b;
  }
  if (s.rfind("Z/", 0) == 0) {
    b.kind = Cyclic;
    long n = 0;
    try {
      n = std::stol(s.substr(2));
    } catch (...) {
      throw std::invalid_argument("bad block '" + s + "'");
    }
    if (n < 2) throw std::invalid_argument("bad block '" + s + "': modulus must be >= 2");
    long p = 2;
    while (n % p != 0) ++p;
    int k = 0;
    long m = n;
    while (m % p == 0) {
      m /= p;
      ++k;
    }
    if (m != 1)
      throw std::invalid_argument("bad block '" + s + "': modulus must be a prime power");
    b.p = p;
    b.k = k;
    return b;
  }
  if (s.rfind("Pruefer(", 0) == 0 && s.back() == ')') {
    b.kind = Pruefer;
    try {
      b.p = std::stol(s.substr(8, s.size() - 9));
    } catch (...) {
      throw std::invalid_argument("bad block '" + s + "'");
    }
    if (!is_prime(b.p)) throw std::invalid_argument("bad block '" + s + "': not a prime");
    return b;
  }
  throw std::invalid_argument("bad block '" + s + "' (expect Q, Z/p^k or Pruefer(p))");
}

std::string AbelianBlock::str() const {
  switch (kind) {
    case Q:
      return "Q";
    case Cyclic:
      return "Z/" + pow_z(p, k).get_str();
    default:
      return "Pruefer(" + std::to_string(p) + ")";
  }
}

mpz_class AbelianBlock::modulus() const { return pow_z(p, k); }

AbelianGroup::AbelianGroup(std::vector<AbelianBlock> blocks) : blocks_(std::move(blocks)) {
  for (const auto& b : blocks_) {
    if (b.kind == AbelianBlock::Cyclic && (!is_prime(b.p) || b.k < 1))
      throw std::invalid_argument("AbelianGroup: bad cyclic block");
    if (b.kind == AbelianBlock::Pruefer && !is_prime(b.p))
      throw std::invalid_argument("AbelianGroup: bad Pruefer block");
  }
}

AbelianGroup AbelianGroup::parse(const std::vector<std::string>& block_strs) {
  std::vector<AbelianBlock> bs;
  bs.reserve(block_strs.size());
  for (const auto& s : block_strs) bs.push_back(AbelianBlock::parse(s));
  return AbelianGroup(std::move(bs));
}

std::string AbelianGroup::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    if (i) os << " + ";
    os << blocks_[i].str();
  }
  return os.str();
}

AbelianElement AbelianGroup::zero() const {
  AbelianElement e;
  e.coords_.assign(blocks_.size(), Rational(0));
  return e;
}

AbelianElement AbelianGroup::element(std::vector<Rational> coords) const {
  if (coords.size() != blocks_.size())
    throw std::invalid_argument("AbelianGroup::element: coordinate count mismatch");
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const AbelianBlock& b = blocks_[i];
    Rational& x = coords[i];
    switch (b.kind) {
      case AbelianBlock::Q:
        break;
      case AbelianBlock::Cyclic: {
        if (!x.is_integer())
          throw std::invalid_argument("cyclic coordinate must be an integer, got " + x.str());
        x = Rational(mod(x.num(), b.modulus()));
        break;
      }
      case AbelianBlock::Pruefer: {
        x = frac(x);
        mpz_class den = x.den();
        while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(b.p))) den /= b.p;
        if (den != 1)
          throw std::invalid_argument("Pruefer(" + std::to_string(b.p) +
                                      ") coordinate must have p-power denominator, got " +
                                      x.str());
        break;
      }
    }
  }
  AbelianElement e;
  e.coords_ = std::move(coords);
  return e;
}

AbelianElement AbelianGroup::add(const AbelianElement& a, const AbelianElement& b) const {
  std::vector<Rational> c(blocks_.size());
  for (size_t i = 0; i < blocks_.size(); ++i) c[i] = a.coords_[i] + b.coords_[i];
  return element(std::move(c));
}

AbelianElement AbelianGroup::neg(const AbelianElement& a) const {
  std::vector<Rational> c(blocks_.size());
  for (size_t i = 0; i < blocks_.size(); ++i) c[i] = -a.coords_[i];
  return element(std::move(c));
}

AbelianElement AbelianGroup::mul(const mpz_class& n, const AbelianElement& a) const {
  std::vector<Rational> c(blocks_.size());
  for (size_t i = 0; i < blocks_.size(); ++i) c[i] = Rational(n) * a.coords_[i];
  return element(std::move(c));
}

std::optional<mpz_class> AbelianGroup::order(const AbelianElement& a) const {
  mpz_class ord = 1;
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const AbelianBlock& b = blocks_[i];
    const Rational& x = a.coords_[i];
    mpz_class o;
    switch (b.kind) {
      case AbelianBlock::Q:
        if (!x.is_zero()) return std::nullopt;
        o = 1;
        break;
      case AbelianBlock::Cyclic: {
        mpz_class m = b.modulus(), g;
        mpz_gcd(g.get_mpz_t(), x.num().get_mpz_t(), m.get_mpz_t());
        o = m / g;
        break;
      }
      case AbelianBlock::Pruefer:
        o = x.den();  // reduced a/p^j has order p^j
        break;
    }
    mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), o.get_mpz_t());
  }
  return ord;
}

AbelianSubgroup AbelianGroup::trivial_subgroup() const {
  AbelianSubgroup s;
  for (const auto& b : blocks_) {
    AbelianSubgroup::Part p;
    p.full = false;
    p.j = b.kind == AbelianBlock::Cyclic ? b.k : 0;
    s.parts_.push_back(p);
  }
  return s;
}

AbelianSubgroup AbelianGroup::full_subgroup() const {
  AbelianSubgroup s;
  for (const auto& b : blocks_) {
    AbelianSubgroup::Part p;
    p.full = b.kind != AbelianBlock::Cyclic;
    p.j = 0;
    s.parts_.push_back(p);
  }
  return s;
}

AbelianSubgroup AbelianGroup::subgroup(std::vector<AbelianPart> parts) const {
  if (parts.size() != blocks_.size())
    throw std::invalid_argument("AbelianGroup::subgroup: part count mismatch");
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const AbelianBlock& b = blocks_[i];
    AbelianPart& p = parts[i];
    switch (b.kind) {
      case AbelianBlock::Q:
        p.j = 0;
        break;
      case AbelianBlock::Cyclic:
        if (p.full) {
          p.full = false;
          p.j = 0;
        }
        if (p.j < 0 || p.j > b.k)
          throw std::invalid_argument("AbelianGroup::subgroup: cyclic index out of range");
        break;
      case AbelianBlock::Pruefer:
        if (p.full)
          p.j = 0;
        else if (p.j < 0)
          throw std::invalid_argument("AbelianGroup::subgroup: negative Pruefer layer");
        break;
    }
  }
  AbelianSubgroup s;
  s.parts_ = std::move(parts);
  return s;
}

bool AbelianElement::is_zero() const {
  for (const auto& x : coords_)
    if (!x.is_zero()) return false;
  return true;
}

std::string AbelianElement::str() const { return tuple_str(coords_); }

bool AbelianSubgroup::contains(const AbelianGroup& g, const AbelianElement& a) const {
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    const Part& p = parts_[static_cast<size_t>(i)];
    const Rational& x = a.coord(i);
    switch (b.kind) {
      case AbelianBlock::Q:
        if (!p.full && !x.is_zero()) return false;
        break;
      case AbelianBlock::Cyclic: {
        if (x.is_zero()) break;
        if (p.j > 0 && valuation(x.num(), b.p) < p.j) return false;
        break;
      }
      case AbelianBlock::Pruefer: {
        if (p.full) break;
        if (x.den() > pow_z(b.p, p.j)) return false;
        break;
      }
    }
  }
  return true;
}

bool AbelianSubgroup::contains(const AbelianGroup& g, const AbelianSubgroup& o) const {
  return intersect(g, *this, o) == o;
}

bool AbelianSubgroup::is_finite(const AbelianGroup& g) const {
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    if (b.kind != AbelianBlock::Cyclic && parts_[static_cast<size_t>(i)].full) return false;
  }
  return true;
}

mpz_class AbelianSubgroup::order(const AbelianGroup& g) const {
  if (!is_finite(g)) throw std::domain_error("AbelianSubgroup::order: infinite subgroup");
  mpz_class o = 1;
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    const Part& p = parts_[static_cast<size_t>(i)];
    if (b.kind == AbelianBlock::Cyclic) o *= pow_z(b.p, b.k - p.j);
    if (b.kind == AbelianBlock::Pruefer) o *= pow_z(b.p, p.j);
  }
  return o;
}

std::string AbelianSubgroup::str(const AbelianGroup& g) const {
  std::ostringstream os;
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    const Part& p = parts_[static_cast<size_t>(i)];
    if (i) os << " + ";
    switch (b.kind) {
      case AbelianBlock::Q:
        os << (p.full ? "Q" : "0");
        break;
      case AbelianBlock::Cyclic:
        os << b.p << "^" << p.j << "*(" << b.str() << ")";
        break;
      case AbelianBlock::Pruefer:
        if (p.full)
          os << b.str();
        else
          os << b.str() << "[" << b.p << "^" << p.j << "]";
        break;
    }
  }
  return os.str();
}

AbelianSubgroup sum(const AbelianGroup& g, const AbelianSubgroup& a, const AbelianSubgroup& b) {
  AbelianSubgroup r = a;
  for (int i = 0; i < g.size(); ++i) {
    auto& rp = r.parts_[static_cast<size_t>(i)];
    const auto& bp = b.parts_[static_cast<size_t>(i)];
    switch (g.block(i).kind) {
      case AbelianBlock::Q:
        rp.full = rp.full || bp.full;
        break;
      case AbelianBlock::Cyclic:
        rp.j = std::min(rp.j, bp.j);
        break;
      case AbelianBlock::Pruefer:
        if (rp.full || bp.full) {
          rp.full = true;
          rp.j = 0;
        } else {
          rp.j = std::max(rp.j, bp.j);
        }
        break;
    }
  }
  return r;
}

AbelianSubgroup intersect(const AbelianGroup& g, const AbelianSubgroup& a,
                          const AbelianSubgroup& b) {
  AbelianSubgroup r = a;
  for (int i = 0; i < g.size(); ++i) {
    auto& rp = r.parts_[static_cast<size_t>(i)];
    const auto& bp = b.parts_[static_cast<size_t>(i)];
    switch (g.block(i).kind) {
      case AbelianBlock::Q:
        rp.full = rp.full && bp.full;
        break;
      case AbelianBlock::Cyclic:
        rp.j = std::max(rp.j, bp.j);
        break;
      case AbelianBlock::Pruefer:
        if (rp.full && bp.full) {
          rp.full = true;
          rp.j = 0;
        } else {
          int ja = rp.full ? -1 : rp.j, jb = bp.full ? -1 : bp.j;
          rp.full = false;
          rp.j = ja < 0 ? jb : (jb < 0 ? ja : std::min(ja, jb));
        }
        break;
    }
  }
  return r;
}

AbelianSubgroup power_subgroup(const AbelianGroup& g, const AbelianSubgroup& a,
                               const mpz_class& n) {
  if (sgn(n) < 0) return power_subgroup(g, a, -n);
  AbelianSubgroup r = a;
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    auto& rp = r.parts_[static_cast<size_t>(i)];
    if (sgn(n) == 0) {  // image of multiplication by 0
      rp.full = false;
      rp.j = b.kind == AbelianBlock::Cyclic ? b.k : 0;
      continue;
    }
    switch (b.kind) {
      case AbelianBlock::Q:
        break;  // n * Q = Q, n * 0 = 0
      case AbelianBlock::Cyclic:
        rp.j = std::min(rp.j + valuation(n, b.p), b.k);
        break;
      case AbelianBlock::Pruefer:
        if (!rp.full) rp.j = std::max(rp.j - valuation(n, b.p), 0);
        break;  // full Pruefer is divisible: n * full = full
    }
  }
  return r;
}

AbelianSubgroup divisible_part(const AbelianGroup& g) {
  AbelianSubgroup r = g.trivial_subgroup();
  for (int i = 0; i < g.size(); ++i)
    if (g.block(i).kind != AbelianBlock::Cyclic) r.parts_[static_cast<size_t>(i)].full = true;
  return r;
}

AbelianSubgroup bounded_complement(const AbelianGroup& g) {
  AbelianSubgroup r = g.trivial_subgroup();
  for (int i = 0; i < g.size(); ++i)
    if (g.block(i).kind == AbelianBlock::Cyclic) r.parts_[static_cast<size_t>(i)].j = 0;
  return r;
}

CharacteristicDecomposition characteristic_decomposition(const AbelianGroup& g) {
  CharacteristicDecomposition d{divisible_part(g), g.trivial_subgroup(), 1, 1};
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    if (b.kind == AbelianBlock::Cyclic) {
      mpz_class m = b.modulus();
      mpz_lcm(d.exponent.get_mpz_t(), d.exponent.get_mpz_t(), m.get_mpz_t());
    }
  }
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    auto& p = d.exponent_kernel.parts_[static_cast<size_t>(i)];
    switch (b.kind) {
      case AbelianBlock::Q:
        p.full = false;
        break;
      case AbelianBlock::Cyclic: {
        const int v = d.exponent == 1 ? 0 : std::min(valuation(d.exponent, b.p), b.k);
        p.j = b.k - v;
        break;
      }
      case AbelianBlock::Pruefer: {
        p.full = false;
        p.j = d.exponent == 1 ? 0 : valuation(d.exponent, b.p);
        d.overlap_order *= pow_z(b.p, p.j);  // D ∩ C lives in the Pruefer layers
        break;
      }
    }
  }
  return d;
}

PrimaryDecomposition p_primary_decomposition(const AbelianGroup& g) {
  PrimaryDecomposition d{g.trivial_subgroup(), {}};
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    if (b.kind == AbelianBlock::Q) continue;
    d.torsion.parts_[static_cast<size_t>(i)].full = b.kind != AbelianBlock::Cyclic;
    d.torsion.parts_[static_cast<size_t>(i)].j = 0;
    if (!d.primary.count(b.p)) d.primary.emplace(b.p, g.trivial_subgroup());
  }
  for (auto& [p, sub] : d.primary)
    for (int i = 0; i < g.size(); ++i) {
      const AbelianBlock& b = g.block(i);
      if (b.kind != AbelianBlock::Q && b.p == p) {
        sub.parts_[static_cast<size_t>(i)].full = b.kind != AbelianBlock::Cyclic;
        sub.parts_[static_cast<size_t>(i)].j = 0;
      }
    }
  return d;
}

AbelianElement lift_torsion(const AbelianGroup& g, const AbelianSubgroup& N,
                            const AbelianElement& x, const mpz_class& n) {
  if (sgn(n) <= 0) throw std::invalid_argument("lift_torsion: n must be positive");
  const AbelianElement z = g.mul(n, x);
  if (!N.contains(g, z))
    throw std::invalid_argument("lift_torsion: n*x is not in N (n=" + n.get_str() +
                                ", n*x=" + z.str() + ")");
  if (N.contains(g, x)) return g.zero();
  // Split N = D ⊕ B with D the n-divisible piece and B the p-pieces for p|n,
  // divide the D-component of n*x by n inside N, and subtract.
  std::vector<Rational> d(static_cast<size_t>(g.size()), Rational(0));
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    const auto& p = N.part(i);
    const Rational& zi = z.coord(i);
    if (zi.is_zero()) continue;
    switch (b.kind) {
      case AbelianBlock::Q:
        d[static_cast<size_t>(i)] = zi / Rational(n);  // p.full, else zi would be 0
        break;
      case AbelianBlock::Cyclic: {
        if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(b.p))) break;
        const mpz_class m = b.modulus();
        d[static_cast<size_t>(i)] = Rational(mod(zi.num() * inverse_mod(mod(n, m), m), m));
        break;
      }
      case AbelianBlock::Pruefer: {
        const int s = valuation(n, b.p);
        if (p.full) {
          // y = a * m^{-1} / p^{j+s} solves n*y = a/p^j  (n = p^s * m)
          const mpz_class mpart = n / pow_z(b.p, s);
          const mpz_class den = zi.den() * pow_z(b.p, s);
          d[static_cast<size_t>(i)] =
              Rational(mod(zi.num() * inverse_mod(mod(mpart, den), den), den), den);
        } else if (s == 0) {
          const mpz_class den = pow_z(b.p, p.j);
          d[static_cast<size_t>(i)] =
              Rational(mod(zi.num() * (den / zi.den()) * inverse_mod(mod(n, den), den), den), den);
        }
        break;
      }
    }
  }
  return g.add(x, g.neg(g.element(std::move(d))));
}

AbelianElement random_element(const AbelianGroup& g, const AbelianSubgroup& s,
                              std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 4);
  std::uniform_int_distribution<int> small(0, 3);
  std::vector<Rational> c(static_cast<size_t>(g.size()), Rational(0));
  for (int i = 0; i < g.size(); ++i) {
    const AbelianBlock& b = g.block(i);
    const auto& p = s.part(i);
    switch (b.kind) {
      case AbelianBlock::Q:
        if (p.full) c[static_cast<size_t>(i)] = Rational(num(rng), den(rng));
        break;
      case AbelianBlock::Cyclic: {
        const mpz_class step = pow_z(b.p, p.j);
        const mpz_class m = b.modulus();
        c[static_cast<size_t>(i)] = Rational(mod(step * num(rng), m));
        break;
      }
      case AbelianBlock::Pruefer: {
        const int j = p.full ? small(rng) : std::min(p.j, small(rng));
        if (j > 0) {
          const mpz_class denom = pow_z(b.p, j);
          c[static_cast<size_t>(i)] = Rational(mod(mpz_class(num(rng)), denom), denom);
        }
        break;
      }
    }
  }
  return g.element(std::move(c));
}

}  // namespace grouplab
