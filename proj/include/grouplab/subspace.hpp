#pragma once

#include <optional>
#include <vector>

#include "grouplab/matrix.hpp"

namespace grouplab {

// Subspace of Q^n with a canonical basis: RREF rows, zero rows removed.
// Canonicality makes equality structural (bit-for-bit on the basis matrix).
class Subspace {
 public:
  explicit Subspace(int ambient);  // zero subspace
  static Subspace span(int ambient, const std::vector<Vec>& gens);
  static Subspace from_rows(const Matrix& rows);
  static Subspace full(int ambient);

  int ambient() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vec basis_vector(int i) const { return basis_.row(i); }

  bool contains(const Vec& v) const;
  bool contains(const Subspace& o) const;
  bool operator==(const Subspace& o) const = default;

  // Coefficients of v in the canonical basis (empty option if v is outside).
  std::optional<Vec> coordinates(const Vec& v) const;

  std::string str() const { return basis_.str(); }

 private:
  int ambient_;
  Matrix basis_;
};

Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersect(const Subspace& a, const Subspace& b);

}  // namespace grouplab
