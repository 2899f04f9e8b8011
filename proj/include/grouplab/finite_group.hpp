#pragma once

#include <optional>
#include <string>
#include <vector>

namespace grouplab {

// Sorted set of element indices, closed under the parent's operations.
struct FiniteSubgroup {
  std::vector<int> members;

  int order() const { return static_cast<int>(members.size()); }
  bool contains(int x) const;
  bool contains(const FiniteSubgroup& o) const;
  bool operator==(const FiniteSubgroup& o) const = default;
};

struct FiniteQuotient;

// A finite group presented by its full Cayley table. Construction validates
// the table (Latin square, identity, inverses; associativity exhaustively up
// to order 256, densely sampled above) so everything downstream can trust it.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::vector<int>> table, std::string name = "");
  // generators as 1-based image lists, degree <= 16; order capped at 5000
  static FiniteGroup from_permutations(const std::vector<std::vector<int>>& gens,
                                       std::string name = "");

  int order() const { return n_; }
  const std::string& name() const { return name_; }
  int identity() const { return e_; }
  int mul(int a, int b) const { return table_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
  int conj_by(int a, int g) const { return mul(mul(inv(g), a), g); }  // a^g = g^{-1} a g
  int comm(int a, int b) const { return mul(inv(a), conj_by(a, b)); }  // [a,b] = a^{-1} a^b
  int pow(int a, long e) const;
  int element_order(int a) const;
  // indices of the construction generators (all non-identity elements for
  // table input)
  const std::vector<int>& generators() const { return gens_; }
  std::string element_name(int a) const;  // cycle notation for permutation input

  FiniteSubgroup trivial_subgroup() const;
  FiniteSubgroup full_subgroup() const;
  FiniteSubgroup subgroup(std::vector<int> members) const;  // validates closure

  FiniteSubgroup closure(std::vector<int> seed) const;
  FiniteSubgroup conjugate(const FiniteSubgroup& s, int g) const;
  bool normalizes(const FiniteSubgroup& a, const FiniteSubgroup& b) const;
  bool is_normal(const FiniteSubgroup& s) const;
  bool centralizes(const FiniteSubgroup& a, const FiniteSubgroup& b) const;
  FiniteSubgroup normal_closure(const std::vector<int>& seed) const;
  FiniteSubgroup centralizer(const FiniteSubgroup& within, const FiniteSubgroup& s) const;
  FiniteSubgroup centralizer_of_element(const FiniteSubgroup& within, int x) const;
  FiniteSubgroup normalizer(const FiniteSubgroup& s) const;
  FiniteSubgroup center() const;
  FiniteSubgroup intersect(const FiniteSubgroup& a, const FiniteSubgroup& b) const;
  FiniteSubgroup join(const FiniteSubgroup& a, const FiniteSubgroup& b) const;

  std::vector<int> commutator_set(const FiniteSubgroup& a, const FiniteSubgroup& b) const;
  FiniteSubgroup commutator_subgroup(const FiniteSubgroup& a, const FiniteSubgroup& b) const;

  bool is_abelian() const;
  bool is_nilpotent(const FiniteSubgroup& s) const;
  bool is_solvable(const FiniteSubgroup& s) const;
  bool is_nilpotent() const { return is_nilpotent(full_subgroup()); }
  bool is_solvable() const { return is_solvable(full_subgroup()); }
  // smallest n with S^n trivial (S^0 = S, S^{n+1} = [S, S^n]); nullopt when
  // not nilpotent
  std::optional<int> nilpotency_class(const FiniteSubgroup& s) const;

  std::vector<FiniteSubgroup> all_subgroups() const;
  std::vector<FiniteSubgroup> normal_subgroups() const;
  std::vector<std::vector<int>> conjugacy_classes() const;

  FiniteQuotient quotient(const FiniteSubgroup& n) const;

 private:
  FiniteGroup() = default;
  void finish_construction();  // identity, inverses, validation

  int n_ = 0;
  int e_ = 0;
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<int> inv_;
  std::vector<int> gens_;
  std::vector<std::string> labels_;  // empty unless built from permutations
};

// quotient as a fresh Cayley table on canonical coset representatives
struct FiniteQuotient {
  FiniteGroup group;
  std::vector<int> proj;  // parent index -> quotient index
  std::vector<int> reps;  // quotient index -> coset representative
};

// sets[n] = [A,B]_n, the products of at most n factors [a,b] or [a,b]^{-1};
// sets[0] = {identity}. The profile records every layer until it stabilizes.
struct WidthProfile {
  std::vector<std::vector<int>> sets;
  int width = 0;  // smallest n with sets[n] == sets[n+1]
  FiniteSubgroup subgroup;  // the group [A,B]
};
WidthProfile commutator_profile(const FiniteGroup& g, const FiniteSubgroup& a,
                                const FiniteSubgroup& b);

// With A normalizing B, [A,B] is a finite subgroup of B; the report also
// retraces the proof shape: the raw commutator set is bounded by the
// conjugates of coset-representative commutators.
struct BaerReport {
  FiniteSubgroup commutator;
  bool commutator_in_b = false;
  bool set_closed_under_conjugation = false;  // {[a,b]}^ab stays in the set
  bool rep_bound_holds = false;               // every [a,b] is some [a_i,b_j]^beta
  bool ok() const { return commutator_in_b && set_closed_under_conjugation && rep_bound_holds; }
};
BaerReport baer_check(const FiniteGroup& g, const FiniteSubgroup& a, const FiniteSubgroup& b);

// width([A,B]) <= k + s where k is the width modulo N and s recovers the
// fiber: [A,B]_s ∩ N = [A,B] ∩ N.
struct WidthAdditivityReport {
  int k = 0;
  int s = 0;
  int width = 0;
  bool ok() const { return width <= k + s; }
};
WidthAdditivityReport width_additivity_check(const FiniteGroup& g, const FiniteSubgroup& n,
                                             const FiniteSubgroup& a, const FiniteSubgroup& b);

// lower[i] = S^i (S^0 = S, S^{n+1} = [S,S^n]), derived[i] = S^(i),
// upper[i] = Z_i (Z_0 = 1); each series listed until it stabilizes.
struct SeriesReport {
  std::vector<FiniteSubgroup> lower_central;
  std::vector<FiniteSubgroup> derived;
  std::vector<FiniteSubgroup> upper_central;
  bool nilpotent = false;
  bool solvable = false;
  int nilpotency_class = -1;
  int solvability_class = -1;
  bool nilpotent_inclusions_ok = true;    // class n: G^i <= Z_{n-i}
  bool class_characterization_ok = true;  // Z_n = G, Z_{n-1} < G, G/Z has class n-1
};
SeriesReport series(const FiniteGroup& g);

struct FittingReport {
  FiniteSubgroup fitting;
  FiniteSubgroup radical;
  bool fitting_nilpotent = false;
  bool radical_solvable = false;
  bool fitting_in_radical = false;
  bool ok() const { return fitting_nilpotent && radical_solvable && fitting_in_radical; }
};
FittingReport fitting_and_radical(const FiniteGroup& g);

// finite analogs: every nontrivial normal subgroup meets the center,
// every proper subgroup is properly normalized
struct NilpotentAnalogReport {
  int normal_checked = 0;
  int proper_checked = 0;
  bool center_intersections_ok = false;
  bool normalizer_growth_ok = false;
  bool ok() const { return center_intersections_ok && normalizer_growth_ok; }
};
NilpotentAnalogReport nilpotent_analog_checks(const FiniteGroup& g);

// whenever {[h,x] : h in H} centralizes H, the map h -> [h,x] is a
// homomorphism with kernel C_H(x)
struct AdMapReport {
  bool premise_holds = false;
  bool homomorphism_ok = false;
  bool kernel_is_centralizer = false;
  bool ok() const { return !premise_holds || (homomorphism_ok && kernel_is_centralizer); }
};
AdMapReport ad_map_check(const FiniteGroup& g, const FiniteSubgroup& h, int x);

}  // namespace grouplab
