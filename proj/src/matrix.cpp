#include "grouplab/matrix.hpp"

#include <sstream>

namespace grouplab {

Vec vec_zero(int n) { return Vec(static_cast<size_t>(n)); }

Vec vec_unit(int i, int n) {
  Vec v(static_cast<size_t>(n));
  v[static_cast<size_t>(i)] = Rational(1);
  return v;
}

static void check_same_size(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(what) + ": length mismatch");
}

Vec vec_add(const Vec& a, const Vec& b) {
  check_same_size(a, b, "vec_add");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec vec_sub(const Vec& a, const Vec& b) {
  check_same_size(a, b, "vec_sub");
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec vec_scale(const Rational& c, const Vec& a) {
  Vec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

bool vec_is_zero(const Vec& a) {
  for (const auto& x : a)
    if (!x.is_zero()) return false;
  return true;
}

std::string vec_str(const Vec& a) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) os << ",";
    os << a[i];
  }
  os << ")";
  return os.str();
}

Matrix::Matrix(int rows, int cols)
    : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<Vec>& rows, int cols) {
  Matrix m(static_cast<int>(rows.size()), cols);
  for (size_t r = 0; r < rows.size(); ++r) {
    if (static_cast<int>(rows[r].size()) != cols)
      throw std::invalid_argument("Matrix::from_rows: row length mismatch");
    for (int c = 0; c < cols; ++c) m.at(static_cast<int>(r), c) = rows[r][c];
  }
  return m;
}

Vec Matrix::row(int r) const {
  Vec v(static_cast<size_t>(cols_));
  for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
  return v;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("Matrix::operator*: shape mismatch");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      if (at(i, k).is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        if (o.at(k, j).is_zero()) continue;
        r.at(i, j) += at(i, k) * o.at(k, j);
      }
    }
  return r;
}

Vec Matrix::apply(const Vec& x) const {
  if (static_cast<int>(x.size()) != cols_)
    throw std::invalid_argument("Matrix::apply: length mismatch");
  Vec r(static_cast<size_t>(rows_));
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j)
      if (!at(i, j).is_zero() && !x[j].is_zero()) r[i] += at(i, j) * x[j];
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix::operator+: shape mismatch");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("Matrix::operator-: shape mismatch");
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

Matrix Matrix::scaled(const Rational& c) const {
  Matrix r(rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = c * e_[i];
  return r;
}

Matrix Matrix::transpose() const {
  Matrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

Matrix Matrix::stack(const Matrix& top, const Matrix& bottom) {
  if (top.cols_ != bottom.cols_ && top.rows_ != 0 && bottom.rows_ != 0)
    throw std::invalid_argument("Matrix::stack: column mismatch");
  int cols = top.rows_ == 0 ? bottom.cols_ : top.cols_;
  Matrix r(top.rows_ + bottom.rows_, cols);
  for (int i = 0; i < top.rows_; ++i)
    for (int j = 0; j < cols; ++j) r.at(i, j) = top.at(i, j);
  for (int i = 0; i < bottom.rows_; ++i)
    for (int j = 0; j < cols; ++j) r.at(top.rows_ + i, j) = bottom.at(i, j);
  return r;
}

Echelon Matrix::rref() const {
  Matrix m = *this;
  int rank = 0;
  for (int col = 0; col < m.cols_ && rank < m.rows_; ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows_; ++r)
      if (!m.at(r, col).is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < m.cols_; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    const Rational inv = m.at(rank, col).inverse();
    for (int j = col; j < m.cols_; ++j) m.at(rank, j) *= inv;
    for (int r = 0; r < m.rows_; ++r) {
      if (r == rank || m.at(r, col).is_zero()) continue;
      const Rational f = m.at(r, col);
      for (int j = col; j < m.cols_; ++j) m.at(r, j) -= f * m.at(rank, j);
    }
    ++rank;
  }
  return {std::move(m), rank};
}

Matrix Matrix::kernel() const {
  const Echelon e = rref();
  // pivot column of each of the first `rank` rows
  std::vector<int> pivot_col(e.rank);
  std::vector<bool> is_pivot(static_cast<size_t>(cols_), false);
  for (int r = 0; r < e.rank; ++r) {
    int c = 0;
    while (c < cols_ && e.m.at(r, c).is_zero()) ++c;
    pivot_col[r] = c;
    is_pivot[c] = true;
  }
  Matrix k(cols_ - e.rank, cols_);
  int kr = 0;
  for (int free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    k.at(kr, free) = 1;
    for (int r = 0; r < e.rank; ++r) k.at(kr, pivot_col[r]) = -e.m.at(r, free);
    ++kr;
  }
  return k;
}

bool Matrix::is_zero() const {
  for (const auto& x : e_)
    if (!x.is_zero()) return false;
  return true;
}

std::string Matrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    if (i) os << "; ";
    for (int j = 0; j < cols_; ++j) {
      if (j) os << " ";
      os << at(i, j);
    }
  }
  os << "]";
  return os.str();
}

std::optional<Vec> solve_linear(const Matrix& A, const Vec& b) {
  if (static_cast<int>(b.size()) != A.rows())
    throw std::invalid_argument("solve_linear: length mismatch");
  Matrix aug(A.rows(), A.cols() + 1);
  for (int i = 0; i < A.rows(); ++i) {
    for (int j = 0; j < A.cols(); ++j) aug.at(i, j) = A.at(i, j);
    aug.at(i, A.cols()) = b[i];
  }
  const Echelon e = aug.rref();
  Vec x(static_cast<size_t>(A.cols()));
  for (int r = 0; r < e.rank; ++r) {
    int c = 0;
    while (c <= A.cols() && e.m.at(r, c).is_zero()) ++c;
    if (c == A.cols()) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
    x[c] = e.m.at(r, A.cols());
  }
  return x;
}

}  // namespace grouplab
