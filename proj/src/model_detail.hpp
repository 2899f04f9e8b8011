#pragma once

#include <random>
#include <vector>

#include "grouplab/finite_group.hpp"
#include "grouplab/matrix.hpp"
#include "grouplab/subspace.hpp"

namespace grouplab::detail {

// small exact coefficients for randomized sampling
inline Rational random_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 13) - 6;
  long den = static_cast<long>(rng() % 3) + 1;
  return Rational(num, den);
}

inline Vec random_vector_in(const Subspace& s, std::mt19937_64& rng) {
  Vec v = vec_zero(s.ambient());
  for (int i = 0; i < s.dim(); ++i) {
    v = vec_add(v, vec_scale(random_rational(rng), s.basis_vector(i)));
  }
  return v;
}

// A subgroup repackaged as a standalone group, with the index maps in both
// directions (to_parent[sub] and from_parent[parent], the latter -1 outside).
struct FiniteRestriction {
  FiniteGroup group;
  std::vector<int> to_parent;
  std::vector<int> from_parent;
};

inline FiniteRestriction restrict_finite(const FiniteGroup& g, const FiniteSubgroup& s,
                                         const std::string& name) {
  std::vector<int> to_parent = s.members;
  std::vector<int> from_parent(static_cast<size_t>(g.order()), -1);
  for (size_t i = 0; i < to_parent.size(); ++i) {
    from_parent[static_cast<size_t>(to_parent[i])] = static_cast<int>(i);
  }
  int n = s.order();
  std::vector<std::vector<int>> table(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int p = g.mul(to_parent[static_cast<size_t>(a)], to_parent[static_cast<size_t>(b)]);
      table[static_cast<size_t>(a)][static_cast<size_t>(b)] = from_parent[static_cast<size_t>(p)];
    }
  }
  return FiniteRestriction{FiniteGroup::from_table(std::move(table), name), std::move(to_parent),
                           std::move(from_parent)};
}

// Coordinates against a fixed basis, with the canonical complement of a
// subspace expressed in those coordinates: project kills the subspace,
// section splits project (project o section = id).
struct CoordinateSplit {
  Matrix project;  // (k - l) x k
  Matrix section;  // k x (k - l)
};

// inner: subspace of Q^k in its canonical basis; returns maps for Q^k / inner
inline CoordinateSplit split_off(const Subspace& inner, int k) {
  std::vector<int> pivots;
  for (int r = 0; r < inner.dim(); ++r) {
    int c = 0;
    while (c < k && inner.basis().at(r, c).is_zero()) ++c;
    pivots.push_back(c);
  }
  std::vector<int> complement;
  for (int c = 0; c < k; ++c) {
    bool is_pivot = false;
    for (int p : pivots) is_pivot = is_pivot || (p == c);
    if (!is_pivot) complement.push_back(c);
  }
  int q = static_cast<int>(complement.size());
  CoordinateSplit cs{Matrix(q, k), Matrix(k, q)};
  for (int col = 0; col < k; ++col) {
    // reduce the unit vector by the canonical basis rows, keep free coords
    Vec v = vec_unit(col, k);
    for (int r = 0; r < inner.dim(); ++r) {
      v = vec_sub(v, vec_scale(v[static_cast<size_t>(pivots[static_cast<size_t>(r)])],
                               inner.basis_vector(r)));
    }
    for (int i = 0; i < q; ++i) {
      cs.project.at(i, col) = v[static_cast<size_t>(complement[static_cast<size_t>(i)])];
    }
  }
  for (int i = 0; i < q; ++i) cs.section.at(complement[static_cast<size_t>(i)], i) = 1;
  return cs;
}

}  // namespace grouplab::detail
