#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grouplab/rational.hpp"

namespace grouplab {

using Vec = std::vector<Rational>;

Vec vec_zero(int n);
Vec vec_unit(int i, int n);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(const Rational& c, const Vec& a);
bool vec_is_zero(const Vec& a);
std::string vec_str(const Vec& a);

struct Echelon;

// Dense exact matrix, row-major. Rows double as basis vectors of row spans.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols);
  static Matrix identity(int n);
  static Matrix from_rows(const std::vector<Vec>& rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Rational& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }
  Vec row(int r) const;

  Matrix operator*(const Matrix& o) const;
  Vec apply(const Vec& x) const;  // M x, x as column vector
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Rational& c) const;
  Matrix transpose() const;
  bool operator==(const Matrix& o) const = default;

  // Vertical stack; column counts must agree.
  static Matrix stack(const Matrix& top, const Matrix& bottom);

  Echelon rref() const;

  // Rows span the right kernel {x : M x = 0}.
  Matrix kernel() const;

  bool is_zero() const;
  std::string str() const;

 private:
  int rows_, cols_;
  std::vector<Rational> e_;
};

struct Echelon {
  Matrix m;  // reduced row echelon form, zero rows kept in place at the bottom
  int rank;
};

// One solution x of A x = b (column convention), if any.
std::optional<Vec> solve_linear(const Matrix& A, const Vec& b);

}  // namespace grouplab
