#include "grouplab/subspace.hpp"

namespace grouplab {

static void check_ambient(const Subspace& a, const Subspace& b, const char* what) {
  if (a.ambient() != b.ambient())
    throw std::invalid_argument(std::string(what) + ": ambient dimension mismatch");
}

static Matrix trim_zero_rows(const Echelon& e) {
  Matrix m(e.rank, e.m.cols());
  for (int i = 0; i < e.rank; ++i)
    for (int j = 0; j < e.m.cols(); ++j) m.at(i, j) = e.m.at(i, j);
  return m;
}

Subspace::Subspace(int ambient) : ambient_(ambient), basis_(0, ambient) {
  if (ambient < 0) throw std::invalid_argument("Subspace: negative ambient dimension");
}

Subspace Subspace::span(int ambient, const std::vector<Vec>& gens) {
  for (const auto& g : gens)
    if (static_cast<int>(g.size()) != ambient)
      throw std::invalid_argument("Subspace::span: ambient dimension mismatch");
  Subspace s(ambient);
  s.basis_ = trim_zero_rows(Matrix::from_rows(gens, ambient).rref());
  return s;
}

Subspace Subspace::from_rows(const Matrix& rows) {
  Subspace s(rows.cols());
  s.basis_ = trim_zero_rows(rows.rref());
  return s;
}

Subspace Subspace::full(int ambient) {
  Subspace s(ambient);
  s.basis_ = Matrix::identity(ambient);
  return s;
}

bool Subspace::contains(const Vec& v) const {
  if (static_cast<int>(v.size()) != ambient_)
    throw std::invalid_argument("Subspace::contains: ambient dimension mismatch");
  return coordinates(v).has_value();
}

bool Subspace::contains(const Subspace& o) const {
  check_ambient(*this, o, "Subspace::contains");
  for (int i = 0; i < o.dim(); ++i)
    if (!contains(o.basis_vector(i))) return false;
  return true;
}

std::optional<Vec> Subspace::coordinates(const Vec& v) const {
  // RREF basis: the coefficient on row i is v[pivot(i)]; then verify exactly.
  Vec coeff(static_cast<size_t>(dim()));
  Vec rest = v;
  for (int i = 0; i < dim(); ++i) {
    int p = 0;
    while (p < ambient_ && basis_.at(i, p).is_zero()) ++p;
    coeff[i] = rest[p];
    if (!coeff[i].is_zero())
      for (int j = p; j < ambient_; ++j) rest[j] -= coeff[i] * basis_.at(i, j);
  }
  if (!vec_is_zero(rest)) return std::nullopt;
  return coeff;
}

Subspace sum(const Subspace& a, const Subspace& b) {
  check_ambient(a, b, "sum");
  return Subspace::from_rows(Matrix::stack(a.basis(), b.basis()));
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  check_ambient(a, b, "intersect");
  // Zassenhaus: reduce [A|A ; B|0]; rows with zero left half carry the
  // intersection in their right half.
  const int n = a.ambient();
  Matrix z(a.dim() + b.dim(), 2 * n);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < n; ++j) {
      z.at(i, j) = a.basis().at(i, j);
      z.at(i, n + j) = a.basis().at(i, j);
    }
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < n; ++j) z.at(a.dim() + i, j) = b.basis().at(i, j);
  const Echelon e = z.rref();
  std::vector<Vec> gens;
  for (int r = 0; r < e.rank; ++r) {
    bool left_zero = true;
    for (int j = 0; j < n && left_zero; ++j) left_zero = e.m.at(r, j).is_zero();
    if (!left_zero) continue;
    Vec v(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) v[j] = e.m.at(r, n + j);
    gens.push_back(std::move(v));
  }
  return Subspace::span(n, gens);
}

}  // namespace grouplab
