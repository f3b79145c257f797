#pragma once

// Exact integer linear algebra over fixed-width integers. Every arithmetic
// operation is overflow-checked; nothing ever wraps.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cayleychi {

using Int = std::int64_t;
using IntVec = std::vector<Int>;

class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace checked {
Int add(Int a, Int b);
Int sub(Int a, Int b);
Int mul(Int a, Int b);
Int neg(Int a);
Int abs(Int a);
}  // namespace checked

// Nonnegative gcd; gcd(0, 0) == 0.
Int gcd(Int a, Int b);
// Floor modulus into [0, n) for n > 0.
Int mod(Int a, Int n);

// Dense row-major integer matrix. Used directly as the Heuberger matrix of a
// standardized abelian Cayley graph: an m x r matrix whose integer column span
// H presents the graph Cay(Z^m / H, {H +- e_1, ..., H +- e_m}).
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  Matrix(std::initializer_list<std::initializer_list<Int>> rows);

  static Matrix identity(std::size_t n);
  static Matrix from_rows(const std::vector<IntVec>& rows);
  static Matrix from_columns(const std::vector<IntVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

  IntVec row(std::size_t i) const;
  IntVec col(std::size_t j) const;
  std::vector<IntVec> to_rows() const;

  bool is_zero_row(std::size_t i) const;
  bool is_zero_col(std::size_t j) const;
  bool is_zero() const;

  // Elementary operations, all in place and index-checked.
  void swap_rows(std::size_t i, std::size_t j);
  void negate_row(std::size_t i);
  void swap_cols(std::size_t i, std::size_t j);
  void negate_col(std::size_t i);
  // col_target += k * col_source
  void add_col_multiple(std::size_t target, std::size_t source, Int k);
  // row_target += k * row_source
  void add_row_multiple(std::size_t target, std::size_t source, Int k);
  void erase_row(std::size_t i);
  void erase_col(std::size_t j);
  void append_col(std::span<const Int> c);

  Matrix transpose() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  void check_row(std::size_t i) const;
  void check_col(std::size_t j) const;

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  IntVec data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
IntVec multiply(const Matrix& a, std::span<const Int> v);
// Row vector times matrix.
IntVec multiply(std::span<const Int> v, const Matrix& a);
Int dot(std::span<const Int> a, std::span<const Int> b);
// Exact determinant of a square matrix (fraction-free elimination).
Int determinant(const Matrix& a);

// "1 0; -1 2" style rendering (the matrix text format).
std::string to_string(const Matrix& m);
// Rows separated by ';', entries by whitespace or commas, optional surrounding
// brackets. Rejects ragged rows and empty input.
Matrix parse_matrix(std::string_view text);

Int gcd_vec(std::span<const Int> v);

// Signed determinants of the 2x2 row-pair minors of a 3x2 matrix in the fixed
// order (rows 1,2), (rows 1,3), (rows 2,3).
struct Minors3x2 {
  Int rows12 = 0;
  Int rows13 = 0;
  Int rows23 = 0;
  friend bool operator==(const Minors3x2&, const Minors3x2&) = default;
};
Minors3x2 minors_3x2(const Matrix& m);

// U * M * V == D with U, V unimodular and D diagonal, d_1 | d_2 | ..., d_i >= 0.
// The nonzero diagonal entries come first; `rank` counts them.
struct SmithDecomposition {
  Matrix U;
  Matrix D;
  Matrix V;
  Matrix U_inv;
  std::size_t rank = 0;

  IntVec diagonal() const;
};

SmithDecomposition smith_normal_form(const Matrix& m);

std::size_t rank(const Matrix& m);
// True iff the columns are linearly dependent over Q.
bool columns_dependent(const Matrix& m);

// The integer column span of a matrix, with its Smith data cached so repeated
// membership queries are cheap.
class Lattice {
 public:
  explicit Lattice(const Matrix& generators);

  std::size_t dimension() const { return dim_; }
  const Matrix& generators() const { return gens_; }
  const SmithDecomposition& smith() const { return snf_; }

  bool contains(std::span<const Int> v) const;
  // Integer coefficients c with generators * c == v, when they exist.
  std::optional<IntVec> solve(std::span<const Int> v) const;

 private:
  Matrix gens_;
  SmithDecomposition snf_;
  std::size_t dim_;
};

bool membership(const Matrix& m, std::span<const Int> v);

}  // namespace cayleychi
