#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "grouplab/rational.hpp"

namespace grouplab {

// Formal abelian groups: finite direct sums of Q, Z/p^k and Pruefer(p)
// blocks. Z itself is deliberately not a block kind (its subgroup lattice
// has infinite descending chains, which the rest of the tower assumes away).
struct AbelianBlock {
  enum Kind { Q, Cyclic, Pruefer } kind = Q;
  long p = 0;  // prime, for Cyclic and Pruefer
  int k = 0;   // exponent, for Cyclic (modulus p^k)

  static AbelianBlock parse(const std::string& s);  // "Q" | "Z/8" | "Pruefer(3)"
  std::string str() const;
  mpz_class modulus() const;  // p^k for Cyclic
};

class AbelianElement;
class AbelianSubgroup;

// One block's slice of a rectangular subgroup:
//   Q block:       zero or full,
//   Z/p^k block:   p^j * (Z/p^k) for some 0 <= j <= k (full is unused),
//   Pruefer block: full, or the finite layer of order p^j (j >= 0, and j = 0
//                  when full so that equality is structural).
struct AbelianPart {
  bool full = false;
  int j = 0;
  bool operator==(const AbelianPart& o) const = default;
};

class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<AbelianBlock> blocks);
  static AbelianGroup parse(const std::vector<std::string>& block_strs);

  int size() const { return static_cast<int>(blocks_.size()); }
  const AbelianBlock& block(int i) const { return blocks_[static_cast<size_t>(i)]; }
  std::string str() const;

  AbelianElement zero() const;
  // validates and normalizes per-block coordinates
  AbelianElement element(std::vector<Rational> coords) const;

  AbelianElement add(const AbelianElement& a, const AbelianElement& b) const;
  AbelianElement neg(const AbelianElement& a) const;
  AbelianElement mul(const mpz_class& n, const AbelianElement& a) const;
  // order of a, nullopt when infinite
  std::optional<mpz_class> order(const AbelianElement& a) const;

  AbelianSubgroup trivial_subgroup() const;
  AbelianSubgroup full_subgroup() const;
  // validating factory for an explicit block-wise choice
  AbelianSubgroup subgroup(std::vector<AbelianPart> parts) const;

 private:
  std::vector<AbelianBlock> blocks_;
};

class AbelianElement {
 public:
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& coord(int i) const { return coords_[static_cast<size_t>(i)]; }
  bool is_zero() const;
  bool operator==(const AbelianElement& o) const = default;
  std::string str() const;

 private:
  friend class AbelianGroup;
  std::vector<Rational> coords_;
};

struct CharacteristicDecomposition;
struct PrimaryDecomposition;

// Rectangular subgroups: a block-wise choice of AbelianPart. All subgroups
// produced by the operations below stay in this family, which is what makes
// the lattice computations exact and terminating.
class AbelianSubgroup {
 public:
  using Part = AbelianPart;

  const Part& part(int i) const { return parts_[static_cast<size_t>(i)]; }
  bool contains(const AbelianGroup& g, const AbelianElement& a) const;
  bool contains(const AbelianGroup& g, const AbelianSubgroup& o) const;
  bool operator==(const AbelianSubgroup& o) const = default;

  bool is_finite(const AbelianGroup& g) const;
  // order when finite
  mpz_class order(const AbelianGroup& g) const;
  std::string str(const AbelianGroup& g) const;

 private:
  friend class AbelianGroup;
  friend AbelianSubgroup sum(const AbelianGroup&, const AbelianSubgroup&, const AbelianSubgroup&);
  friend AbelianSubgroup intersect(const AbelianGroup&, const AbelianSubgroup&,
                                   const AbelianSubgroup&);
  friend AbelianSubgroup power_subgroup(const AbelianGroup&, const AbelianSubgroup&,
                                        const mpz_class&);
  friend AbelianSubgroup divisible_part(const AbelianGroup&);
  friend AbelianSubgroup bounded_complement(const AbelianGroup&);
  friend CharacteristicDecomposition characteristic_decomposition(const AbelianGroup&);
  friend PrimaryDecomposition p_primary_decomposition(const AbelianGroup&);
  std::vector<Part> parts_;
};

AbelianSubgroup sum(const AbelianGroup& g, const AbelianSubgroup& a, const AbelianSubgroup& b);
AbelianSubgroup intersect(const AbelianGroup& g, const AbelianSubgroup& a,
                          const AbelianSubgroup& b);

// Image of multiplication by n (n >= 0; n = 0 gives the trivial subgroup).
AbelianSubgroup power_subgroup(const AbelianGroup& g, const AbelianSubgroup& a,
                               const mpz_class& n);

// Largest divisible subgroup: Q and Pruefer blocks in full.
AbelianSubgroup divisible_part(const AbelianGroup& g);

// Bounded complement: the cyclic blocks in full; divisible_part ⊕ this = g.
AbelianSubgroup bounded_complement(const AbelianGroup& g);

struct CharacteristicDecomposition {
  AbelianSubgroup divisible;       // D
  AbelianSubgroup exponent_kernel; // C = { a : exp(B) * a = 0 }
  mpz_class exponent;              // exp(B)
  mpz_class overlap_order;         // |D ∩ C| (always finite here)
};
CharacteristicDecomposition characteristic_decomposition(const AbelianGroup& g);

struct PrimaryDecomposition {
  AbelianSubgroup torsion;
  std::map<long, AbelianSubgroup> primary;  // p -> p-primary part
};
PrimaryDecomposition p_primary_decomposition(const AbelianGroup& g);

// Given n*x in N, return a finite-order representative of the coset x + N;
// every prime dividing the order of the result divides n. Throws when
// n*x is outside N.
AbelianElement lift_torsion(const AbelianGroup& g, const AbelianSubgroup& N,
                            const AbelianElement& x, const mpz_class& n);

// deterministic sampling helper for tests/batteries
AbelianElement random_element(const AbelianGroup& g, const AbelianSubgroup& s,
                              std::mt19937_64& rng);

}  // namespace grouplab
