#include "grouplab/lie_algebra.hpp"

#include <array>
#include <stdexcept>

namespace grouplab {

namespace {

Rational signed_unit(int m) { return Rational(m % 2 == 1 ? 1 : -1); }

void append_letters(unsigned& word, int& len, int count, unsigned letter) {
  for (int t = 0; t < count; ++t) {
    word |= letter << len;
    ++len;
  }
}

// enumerate Dynkin block sequences (p_1,q_1)...(p_m,q_m) of total weight
// `remaining`, accumulating coefficients per word
void enumerate_blocks(int remaining, int blocks, unsigned word, int len, const Rational& fact_prod,
                      int total, std::map<unsigned, Rational>& acc) {
  if (remaining == 0) {
    acc[word] += signed_unit(blocks) / (Rational(blocks) * Rational(total) * fact_prod);
    return;
  }
  for (int p = 0; p <= remaining; ++p)
    for (int q = 0; p + q <= remaining; ++q) {
      if (p + q == 0) continue;
      unsigned w = word;
      int l = len;
      append_letters(w, l, p, 0u);
      append_letters(w, l, q, 1u);
      enumerate_blocks(remaining - p - q, blocks + 1, w, l, fact_prod * factorial(p) * factorial(q),
                       total, acc);
    }
}

std::vector<std::pair<unsigned, Rational>> build_dynkin_table(int degree) {
  std::map<unsigned, Rational> acc;
  enumerate_blocks(degree, 0, 0u, 0, Rational(1), degree, acc);
  std::vector<std::pair<unsigned, Rational>> out;
  for (const auto& [word, coeff] : acc) {
    if (coeff.is_zero()) continue;
    // a word ending in two equal letters evaluates to [x,x] = 0 innermost
    if (degree >= 2 &&
        ((word >> (degree - 1)) & 1u) == ((word >> (degree - 2)) & 1u))
      continue;
    out.emplace_back(word, coeff);
  }
  return out;
}

}  // namespace

const std::vector<std::pair<unsigned, Rational>>& dynkin_words(int degree) {
  if (degree < 1 || degree > NilpotentLieAlgebra::kClassCap)
    throw std::invalid_argument("dynkin_words: degree out of range");
  static const auto tables = [] {
    std::array<std::vector<std::pair<unsigned, Rational>>, NilpotentLieAlgebra::kClassCap + 1> t;
    for (int d = 1; d <= NilpotentLieAlgebra::kClassCap; ++d)
      t[static_cast<size_t>(d)] = build_dynkin_table(d);
    return t;
  }();
  return tables[static_cast<size_t>(degree)];
}

NilpotentLieAlgebra::NilpotentLieAlgebra(int dim,
                                         const std::map<std::pair<int, int>, Vec>& brackets,
                                         std::string name)
    : dim_(dim), name_(std::move(name)) {
  if (dim_ <= 0) throw std::invalid_argument("NilpotentLieAlgebra: dimension must be positive");
  c_.assign(static_cast<size_t>(dim_),
            std::vector<Vec>(static_cast<size_t>(dim_), vec_zero(dim_)));
  for (const auto& [ij, v] : brackets) {
    const auto [i, j] = ij;
    if (i < 0 || i >= dim_ || j < 0 || j >= dim_)
      throw std::invalid_argument("NilpotentLieAlgebra: bracket index out of range");
    if (static_cast<int>(v.size()) != dim_)
      throw std::invalid_argument("NilpotentLieAlgebra: bracket value has wrong length");
    if (i == j) {
      if (!vec_is_zero(v))
        throw std::invalid_argument("NilpotentLieAlgebra: [e_i, e_i] must vanish (i=" +
                                    std::to_string(i) + ")");
      continue;
    }
    c_[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
  }
  // antisymmetric completion; explicit redundant input must agree
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j) {
      const Vec& up = c_[static_cast<size_t>(i)][static_cast<size_t>(j)];
      Vec& down = c_[static_cast<size_t>(j)][static_cast<size_t>(i)];
      if (brackets.count({i, j}) && brackets.count({j, i})) {
        if (!vec_is_zero(vec_add(up, down)))
          throw std::invalid_argument("NilpotentLieAlgebra: antisymmetry fails at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
      } else if (brackets.count({j, i})) {
        c_[static_cast<size_t>(i)][static_cast<size_t>(j)] = vec_scale(Rational(-1), down);
      } else {
        down = vec_scale(Rational(-1), up);
      }
    }
  validate();
}

void NilpotentLieAlgebra::validate() {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        Vec jac = bracket(basis_bracket(i, j), vec_unit(k, dim_));
        // [[i,j],k] + [[j,k],i] + [[k,i],j] = 0
        jac = vec_add(jac, bracket(basis_bracket(j, k), vec_unit(i, dim_)));
        jac = vec_add(jac, bracket(basis_bracket(k, i), vec_unit(j, dim_)));
        if (!vec_is_zero(jac))
          throw std::invalid_argument("NilpotentLieAlgebra: Jacobi identity fails at (" +
                                      std::to_string(i) + "," + std::to_string(j) + "," +
                                      std::to_string(k) + ")");
      }
  Subspace full = Subspace::full(dim_);
  Subspace cur = full;
  class_ = 0;
  while (cur.dim() > 0) {
    Subspace next = bracket_subspace(full, cur);
    if (next == cur)
      throw std::invalid_argument("NilpotentLieAlgebra: not nilpotent (lower central series "
                                  "stalls at dimension " +
                                  std::to_string(cur.dim()) + ")");
    cur = next;
    ++class_;
    if (class_ > kClassCap)
      throw std::invalid_argument("NilpotentLieAlgebra: nilpotency class exceeds the cap " +
                                  std::to_string(kClassCap));
  }
}

const Vec& NilpotentLieAlgebra::basis_bracket(int i, int j) const {
  return c_[static_cast<size_t>(i)][static_cast<size_t>(j)];
}

Vec NilpotentLieAlgebra::bracket(const Vec& u, const Vec& v) const {
  if (static_cast<int>(u.size()) != dim_ || static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("bracket: wrong vector length");
  Vec r = vec_zero(dim_);
  for (int i = 0; i < dim_; ++i) {
    if (u[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < dim_; ++j) {
      if (v[static_cast<size_t>(j)].is_zero()) continue;
      const Vec& cij = basis_bracket(i, j);
      if (vec_is_zero(cij)) continue;
      r = vec_add(r, vec_scale(u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)], cij));
    }
  }
  return r;
}

Matrix NilpotentLieAlgebra::ad(const Vec& u) const {
  Matrix m(dim_, dim_);
  for (int j = 0; j < dim_; ++j) {
    Vec col = bracket(u, vec_unit(j, dim_));
    for (int i = 0; i < dim_; ++i) m.at(i, j) = col[static_cast<size_t>(i)];
  }
  return m;
}

Vec NilpotentLieAlgebra::bch(const Vec& u, const Vec& v) const {
  if (static_cast<int>(u.size()) != dim_ || static_cast<int>(v.size()) != dim_)
    throw std::invalid_argument("bch: wrong vector length");
  Vec result = vec_add(u, v);
  for (int degree = 2; degree <= class_; ++degree) {
    for (const auto& [word, coeff] : dynkin_words(degree)) {
      // right-nested bracket of the word
      Vec acc = ((word >> (degree - 1)) & 1u) ? v : u;
      for (int pos = degree - 2; pos >= 0; --pos)
        acc = bracket(((word >> pos) & 1u) ? v : u, acc);
      if (!vec_is_zero(acc)) result = vec_add(result, vec_scale(coeff, acc));
    }
  }
  return result;
}

Vec NilpotentLieAlgebra::inverse(const Vec& u) const { return vec_scale(Rational(-1), u); }

Vec NilpotentLieAlgebra::conjugate(const Vec& a, const Vec& g) const {
  return bch(bch(inverse(g), a), g);
}

Vec NilpotentLieAlgebra::group_commutator(const Vec& a, const Vec& b) const {
  return bch(inverse(a), bch(inverse(b), bch(a, b)));
}

bool NilpotentLieAlgebra::is_subalgebra(const Subspace& s) const {
  for (int i = 0; i < s.dim(); ++i)
    for (int j = i + 1; j < s.dim(); ++j)
      if (!s.contains(bracket(s.basis_vector(i), s.basis_vector(j)))) return false;
  return true;
}

Subspace NilpotentLieAlgebra::subalgebra_closure(const std::vector<Vec>& gens) const {
  Subspace cur = Subspace::span(dim_, gens);
  while (true) {
    std::vector<Vec> vs;
    for (int i = 0; i < cur.dim(); ++i) vs.push_back(cur.basis_vector(i));
    for (int i = 0; i < cur.dim(); ++i)
      for (int j = i + 1; j < cur.dim(); ++j)
        vs.push_back(bracket(cur.basis_vector(i), cur.basis_vector(j)));
    Subspace next = Subspace::span(dim_, vs);
    if (next == cur) return cur;
    cur = next;
  }
}

Subspace NilpotentLieAlgebra::bracket_subspace(const Subspace& a, const Subspace& b) const {
  std::vector<Vec> gens;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j) gens.push_back(bracket(a.basis_vector(i), b.basis_vector(j)));
  return Subspace::span(dim_, gens);
}

bool NilpotentLieAlgebra::normalizes(const Subspace& a, const Subspace& b) const {
  return b.contains(bracket_subspace(a, b));
}

Subspace NilpotentLieAlgebra::subgroup_product(const Subspace& a, const Subspace& b) const {
  if (!normalizes(a, b) && !normalizes(b, a))
    throw std::domain_error("subgroup_product: neither factor normalizes the other");
  Subspace s = sum(a, b);
  if (!is_subalgebra(s))
    throw std::domain_error("subgroup_product: sum failed to close under the bracket");
  return s;
}

NilpotentLieAlgebra::Series NilpotentLieAlgebra::algebra_series() const {
  Series s;
  const Subspace full = Subspace::full(dim_);
  s.lower_central.push_back(full);
  while (s.lower_central.back().dim() > 0)
    s.lower_central.push_back(bracket_subspace(full, s.lower_central.back()));
  s.derived.push_back(full);
  while (s.derived.back().dim() > 0)
    s.derived.push_back(bracket_subspace(s.derived.back(), s.derived.back()));

  s.upper_central.push_back(Subspace(dim_));
  while (true) {
    const Subspace& z = s.upper_central.back();
    if (z.dim() == dim_) break;
    // v is in the next term iff [v, e_j] lies in z for every j; rows of q
    // annihilate exactly z, so the condition is q * ad_column stack kernel
    Matrix q = z.dim() == 0 ? Matrix::identity(dim_) : z.basis().kernel();
    Matrix constraints(0, dim_);
    bool first = true;
    for (int j = 0; j < dim_; ++j) {
      // m_j maps v to [v, e_j]: column i is [e_i, e_j]
      Matrix mj(dim_, dim_);
      for (int i = 0; i < dim_; ++i) {
        const Vec& cij = basis_bracket(i, j);
        for (int r = 0; r < dim_; ++r) mj.at(r, i) = cij[static_cast<size_t>(r)];
      }
      Matrix block = q * mj;
      constraints = first ? block : Matrix::stack(constraints, block);
      first = false;
    }
    Subspace next = Subspace::from_rows(constraints.kernel());
    if (next == z) break;
    s.upper_central.push_back(std::move(next));
  }
  return s;
}

Matrix ut_exp(const Matrix& n) {
  if (n.rows() != n.cols()) throw std::invalid_argument("ut_exp: square matrix required");
  Matrix result = Matrix::identity(n.rows());
  Matrix power = Matrix::identity(n.rows());
  for (int k = 1; k <= n.rows(); ++k) {
    power = power * n;
    if (power.is_zero()) break;
    result = result + power.scaled(Rational(1) / factorial(k));
  }
  return result;
}

Matrix ut_log(const Matrix& u) {
  if (u.rows() != u.cols()) throw std::invalid_argument("ut_log: square matrix required");
  const Matrix m = u - Matrix::identity(u.rows());
  Matrix result(u.rows(), u.cols());
  Matrix power = Matrix::identity(u.rows());
  for (int k = 1; k <= u.rows(); ++k) {
    power = power * m;
    if (power.is_zero()) break;
    result = result + power.scaled(Rational(k % 2 == 1 ? 1 : -1) / Rational(k));
  }
  return result;
}

namespace {

int ut_dim(int size) { return size * (size - 1) / 2; }

int ut_index(int size, int i, int j) {
  // lexicographic position of (i,j), i < j, within the strict upper triangle
  int idx = 0;
  for (int r = 0; r < i; ++r) idx += size - 1 - r;
  return idx + (j - i - 1);
}

}  // namespace

NilpotentLieAlgebra ut_algebra(int size, std::string name) {
  if (size < 2 || size > 16) throw std::invalid_argument("ut_algebra: size must be in [2,16]");
  const int d = ut_dim(size);
  std::map<std::pair<int, int>, Vec> brackets;
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      for (int k = 0; k < size; ++k)
        for (int l = k + 1; l < size; ++l) {
          const int a = ut_index(size, i, j), b = ut_index(size, k, l);
          if (a >= b) continue;
          // [E_ij, E_kl] = d_{jk} E_il - d_{li} E_kj
          Vec v = vec_zero(d);
          if (j == k) v[static_cast<size_t>(ut_index(size, i, l))] += Rational(1);
          if (l == i) v[static_cast<size_t>(ut_index(size, k, j))] -= Rational(1);
          if (!vec_is_zero(v)) brackets[{a, b}] = std::move(v);
        }
  if (name.empty()) name = "ut(" + std::to_string(size) + ")";
  return NilpotentLieAlgebra(d, brackets, std::move(name));
}

Matrix ut_matrix(int size, const Vec& coords) {
  if (static_cast<int>(coords.size()) != ut_dim(size))
    throw std::invalid_argument("ut_matrix: wrong coordinate length");
  Matrix m(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = i + 1; j < size; ++j)
      m.at(i, j) = coords[static_cast<size_t>(ut_index(size, i, j))];
  return m;
}

Vec ut_coords(int size, const Matrix& m) {
  Vec v = vec_zero(ut_dim(size));
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j <= i; ++j)
      if (!m.at(i, j).is_zero())
        throw std::invalid_argument("ut_coords: matrix is not strictly upper triangular");
    for (int j = i + 1; j < size; ++j)
      v[static_cast<size_t>(ut_index(size, i, j))] = m.at(i, j);
  }
  return v;
}

Vec ut_oracle_bch(int size, const Vec& u, const Vec& v) {
  return ut_coords(size, ut_log(ut_exp(ut_matrix(size, u)) * ut_exp(ut_matrix(size, v))));
}

}  // namespace grouplab
