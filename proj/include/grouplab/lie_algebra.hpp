#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "grouplab/subspace.hpp"

namespace grouplab {

// Rational nilpotent Lie algebra given by structure constants, with the exact
// truncated Baker-Campbell-Hausdorff product as the group law on logarithmic
// coordinates. Every vector is a group element; connected subgroups are
// exactly the bracket-closed subspaces.
class NilpotentLieAlgebra {
 public:
  static constexpr int kClassCap = 6;

  // brackets: (i,j) -> [e_i, e_j] (0-based); missing pairs are zero and the
  // antisymmetric completion is automatic. Validates antisymmetry of any
  // redundant input, the Jacobi identity, nilpotency, and the class cap.
  NilpotentLieAlgebra(int dim, const std::map<std::pair<int, int>, Vec>& brackets,
                      std::string name = "");

  int dim() const { return dim_; }
  int nilpotency_class() const { return class_; }
  const std::string& name() const { return name_; }

  const Vec& basis_bracket(int i, int j) const;
  Vec bracket(const Vec& u, const Vec& v) const;
  Matrix ad(const Vec& u) const;  // column j is [u, e_j]

  // group law: the unique w with exp(u)exp(v) = exp(w)
  Vec bch(const Vec& u, const Vec& v) const;
  Vec inverse(const Vec& u) const;
  Vec conjugate(const Vec& a, const Vec& g) const;  // a^g = g^{-1} a g
  Vec group_commutator(const Vec& a, const Vec& b) const;  // a^{-1} a^b

  bool is_subalgebra(const Subspace& s) const;
  // smallest bracket-closed subspace containing the generators: the definable
  // hull of the corresponding group elements
  Subspace subalgebra_closure(const std::vector<Vec>& gens) const;
  // span of [a, b]
  Subspace bracket_subspace(const Subspace& a, const Subspace& b) const;
  bool normalizes(const Subspace& a, const Subspace& b) const;  // [a,b] <= b
  // sum of subspaces; requires one side to normalize the other so that the
  // result is a subgroup
  Subspace subgroup_product(const Subspace& a, const Subspace& b) const;

  struct Series {
    std::vector<Subspace> lower_central;  // g^0 = g, g^{n+1} = [g, g^n], down to 0
    std::vector<Subspace> derived;
    std::vector<Subspace> upper_central;  // z_0 = 0 upwards, until it stabilizes
  };
  Series algebra_series() const;

 private:
  void validate();

  int dim_;
  std::string name_;
  int class_ = 0;
  std::vector<std::vector<Vec>> c_;  // c_[i][j] = [e_i, e_j]
};

// Aggregated Dynkin coefficients for the degree-n homogeneous part of
// log(exp X exp Y): pairs (word, coefficient) where bit k of the word picks
// the letter at position k (0 = X, 1 = Y) and the word is evaluated as the
// right-nested bracket [w_0, [w_1, [... [w_{n-2}, w_{n-1}]]]]. Words whose
// aggregate coefficient vanishes or whose two last letters coincide are
// dropped. Valid for 1 <= degree <= NilpotentLieAlgebra::kClassCap.
const std::vector<std::pair<unsigned, Rational>>& dynkin_words(int degree);

// Exact matrix oracle on strictly upper triangular matrices: finite
// exponential and logarithm series.
Matrix ut_exp(const Matrix& n);
Matrix ut_log(const Matrix& u);

// The Lie algebra of strictly upper triangular size x size matrices, with
// basis E_{ij} (i < j) in lexicographic order.
NilpotentLieAlgebra ut_algebra(int size, std::string name = "");
Matrix ut_matrix(int size, const Vec& coords);
Vec ut_coords(int size, const Matrix& m);
// log(exp(U) exp(V)) computed entirely on the matrix side
Vec ut_oracle_bch(int size, const Vec& u, const Vec& v);

}  // namespace grouplab
