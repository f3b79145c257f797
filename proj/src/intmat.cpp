#include "cayleychi/intmat.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace cayleychi {

namespace checked {

Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in addition");
  return r;
}

Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in subtraction");
  return r;
}

Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in multiplication");
  return r;
}

Int neg(Int a) {
  if (a == std::numeric_limits<Int>::min()) throw OverflowError("integer overflow in negation");
  return -a;
}

Int abs(Int a) { return a < 0 ? neg(a) : a; }

}  // namespace checked

Int gcd(Int a, Int b) {
  a = checked::abs(a);
  b = checked::abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int mod(Int a, Int n) {
  if (n <= 0) throw PreconditionError("mod: modulus must be positive");
  Int r = a % n;
  return r < 0 ? r + n : r;
}

// ---------------------------------------------------------------------------
// Matrix

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Int>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw ShapeError("ragged matrix initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(const std::vector<IntVec>& rows) {
  Matrix m;
  m.rows_ = rows.size();
  m.cols_ = rows.empty() ? 0 : rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != m.cols_) throw ShapeError("ragged rows");
    m.data_.insert(m.data_.end(), r.begin(), r.end());
  }
  return m;
}

Matrix Matrix::from_columns(const std::vector<IntVec>& cols, std::size_t rows) {
  Matrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw ShapeError("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

void Matrix::check_row(std::size_t i) const {
  if (i >= rows_) throw std::out_of_range("row index " + std::to_string(i) + " out of range");
}

void Matrix::check_col(std::size_t j) const {
  if (j >= cols_) throw std::out_of_range("column index " + std::to_string(j) + " out of range");
}

IntVec Matrix::row(std::size_t i) const {
  check_row(i);
  return IntVec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVec Matrix::col(std::size_t j) const {
  check_col(j);
  IntVec c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

std::vector<IntVec> Matrix::to_rows() const {
  std::vector<IntVec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

bool Matrix::is_zero_row(std::size_t i) const {
  check_row(i);
  for (std::size_t j = 0; j < cols_; ++j)
    if ((*this)(i, j) != 0) return false;
  return true;
}

bool Matrix::is_zero_col(std::size_t j) const {
  check_col(j);
  for (std::size_t i = 0; i < rows_; ++i)
    if ((*this)(i, j) != 0) return false;
  return true;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](Int x) { return x == 0; });
}

void Matrix::swap_rows(std::size_t i, std::size_t j) {
  check_row(i);
  check_row(j);
  if (i == j) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void Matrix::negate_row(std::size_t i) {
  check_row(i);
  for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = checked::neg((*this)(i, c));
}

void Matrix::swap_cols(std::size_t i, std::size_t j) {
  check_col(i);
  check_col(j);
  if (i == j) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void Matrix::negate_col(std::size_t i) {
  check_col(i);
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, i) = checked::neg((*this)(r, i));
}

void Matrix::add_col_multiple(std::size_t target, std::size_t source, Int k) {
  check_col(target);
  check_col(source);
  if (target == source) throw std::invalid_argument("add_col_multiple: target equals source");
  if (k == 0) return;
  for (std::size_t r = 0; r < rows_; ++r)
    (*this)(r, target) = checked::add((*this)(r, target), checked::mul(k, (*this)(r, source)));
}

void Matrix::add_row_multiple(std::size_t target, std::size_t source, Int k) {
  check_row(target);
  check_row(source);
  if (target == source) throw std::invalid_argument("add_row_multiple: target equals source");
  if (k == 0) return;
  for (std::size_t c = 0; c < cols_; ++c)
    (*this)(target, c) = checked::add((*this)(target, c), checked::mul(k, (*this)(source, c)));
}

void Matrix::erase_row(std::size_t i) {
  check_row(i);
  auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
  data_.erase(first, first + static_cast<std::ptrdiff_t>(cols_));
  --rows_;
}

void Matrix::erase_col(std::size_t j) {
  check_col(j);
  IntVec next;
  next.reserve(rows_ * (cols_ - 1));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (c != j) next.push_back((*this)(r, c));
  data_ = std::move(next);
  --cols_;
}

void Matrix::append_col(std::span<const Int> c) {
  if (c.size() != rows_) throw ShapeError("append_col: length mismatch");
  IntVec next;
  next.reserve(rows_ * (cols_ + 1));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) next.push_back((*this)(r, k));
    next.push_back(c[r]);
  }
  data_ = std::move(next);
  ++cols_;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("multiply: inner dimensions differ");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Int s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s = checked::add(s, checked::mul(a(i, k), b(k, j)));
      c(i, j) = s;
    }
  return c;
}

IntVec multiply(const Matrix& a, std::span<const Int> v) {
  if (a.cols() != v.size()) throw ShapeError("multiply: vector length mismatch");
  IntVec out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] = checked::add(out[i], checked::mul(a(i, k), v[k]));
  return out;
}

IntVec multiply(std::span<const Int> v, const Matrix& a) {
  if (a.rows() != v.size()) throw ShapeError("multiply: vector length mismatch");
  IntVec out(a.cols(), 0);
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t k = 0; k < a.rows(); ++k) out[j] = checked::add(out[j], checked::mul(v[k], a(k, j)));
  return out;
}

Int dot(std::span<const Int> a, std::span<const Int> b) {
  if (a.size() != b.size()) throw ShapeError("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = checked::add(s, checked::mul(a[i], b[i]));
  return s;
}

Int determinant(const Matrix& a) {
  if (a.rows() != a.cols()) throw ShapeError("determinant: matrix is not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  // Bareiss fraction-free elimination; every division is exact.
  Matrix m = a;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = checked::sub(checked::mul(m(i, j), m(k, k)), checked::mul(m(i, k), m(k, j))) / prev;
    prev = m(k, k);
  }
  return sign < 0 ? checked::neg(m(n - 1, n - 1)) : m(n - 1, n - 1);
}

std::string to_string(const Matrix& m) {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
  }
  return os.str();
}

Matrix parse_matrix(std::string_view text) {
  std::string s(text);
  for (char& ch : s)
    if (ch == '[' || ch == ']' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
  std::vector<IntVec> rows;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(';', start);
    if (end == std::string::npos) end = s.size();
    std::string_view piece(s.data() + start, end - start);
    IntVec row;
    std::size_t i = 0;
    while (i < piece.size()) {
      while (i < piece.size() && std::isspace(static_cast<unsigned char>(piece[i]))) ++i;
      if (i >= piece.size()) break;
      std::size_t j = i;
      while (j < piece.size() && !std::isspace(static_cast<unsigned char>(piece[j]))) ++j;
      std::string token(piece.substr(i, j - i));
      std::size_t used = 0;
      long long value = 0;
      try {
        value = std::stoll(token, &used);
      } catch (const std::out_of_range&) {
        throw ParseError("matrix entry out of range: '" + token + "'");
      } catch (const std::exception&) {
        throw ParseError("not an integer: '" + token + "'");
      }
      if (used != token.size()) throw ParseError("not an integer: '" + token + "'");
      row.push_back(static_cast<Int>(value));
      i = j;
    }
    bool last = end == s.size();
    if (row.empty()) {
      // A trailing ';' is tolerated; an empty row in the middle is not.
      if (!last || rows.empty()) throw ParseError("empty matrix row");
    } else {
      if (!rows.empty() && row.size() != rows.front().size())
        throw ParseError("ragged rows: expected " + std::to_string(rows.front().size()) + " entries, got " +
                         std::to_string(row.size()));
      rows.push_back(std::move(row));
    }
    if (last) break;
    start = end + 1;
  }
  if (rows.empty()) throw ParseError("empty matrix");
  return Matrix::from_rows(rows);
}

Int gcd_vec(std::span<const Int> v) {
  if (v.empty()) throw PreconditionError("gcd_vec: empty vector");
  Int g = 0;
  for (Int x : v) g = gcd(g, x);
  return g;
}

Minors3x2 minors_3x2(const Matrix& m) {
  if (m.rows() != 3 || m.cols() != 2) throw ShapeError("minors_3x2: expected a 3x2 matrix");
  auto det2 = [&](std::size_t a, std::size_t b) {
    return checked::sub(checked::mul(m(a, 0), m(b, 1)), checked::mul(m(a, 1), m(b, 0)));
  };
  return {det2(0, 1), det2(0, 2), det2(1, 2)};
}

// ---------------------------------------------------------------------------
// Smith normal form

IntVec SmithDecomposition::diagonal() const {
  IntVec d;
  for (std::size_t i = 0; i < std::min(D.rows(), D.cols()); ++i) d.push_back(D(i, i));
  return d;
}

namespace {

// Tracks A together with U, U^{-1} and V so that U * M * V == A throughout.
struct SmithState {
  Matrix A, U, U_inv, V;

  void swap_rows(std::size_t i, std::size_t j) {
    A.swap_rows(i, j);
    U.swap_rows(i, j);
    U_inv.swap_cols(i, j);
  }
  void negate_row(std::size_t i) {
    A.negate_row(i);
    U.negate_row(i);
    U_inv.negate_col(i);
  }
  // row_i += k * row_t
  void add_row(std::size_t i, std::size_t t, Int k) {
    A.add_row_multiple(i, t, k);
    U.add_row_multiple(i, t, k);
    U_inv.add_col_multiple(t, i, checked::neg(k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    A.swap_cols(i, j);
    V.swap_cols(i, j);
  }
  // col_j += k * col_t
  void add_col(std::size_t j, std::size_t t, Int k) {
    A.add_col_multiple(j, t, k);
    V.add_col_multiple(j, t, k);
  }
};

}  // namespace

SmithDecomposition smith_normal_form(const Matrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  SmithState s{m, Matrix::identity(rows), Matrix::identity(rows), Matrix::identity(cols)};
  const std::size_t diag = std::min(rows, cols);

  std::size_t t = 0;
  for (; t < diag; ++t) {
    for (;;) {
      // Smallest-magnitude nonzero pivot in the trailing block; ties go to the
      // lowest (row, col) in row-major order.
      std::size_t pi = rows, pj = cols;
      Int best = 0;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          Int a = s.A(i, j);
          if (a == 0) continue;
          Int mag = checked::abs(a);
          if (pi == rows || mag < best) {
            best = mag;
            pi = i;
            pj = j;
          }
        }
      if (pi == rows) break;
      s.swap_rows(t, pi);
      s.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        Int q = s.A(i, t) / s.A(t, t);
        if (q != 0) s.add_row(i, t, checked::neg(q));
        if (s.A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        Int q = s.A(t, j) / s.A(t, t);
        if (q != 0) s.add_col(j, t, checked::neg(q));
        if (s.A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the trailing block by the pivot.
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (s.A(i, j) % s.A(t, t) != 0) {
            s.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (t < rows && t < cols && s.A(t, t) == 0) break;
    if (s.A(t, t) < 0) s.negate_row(t);
  }

  SmithDecomposition out;
  out.rank = 0;
  for (std::size_t i = 0; i < diag; ++i)
    if (s.A(i, i) != 0) ++out.rank;
  out.U = std::move(s.U);
  out.U_inv = std::move(s.U_inv);
  out.V = std::move(s.V);
  out.D = std::move(s.A);
  return out;
}

std::size_t rank(const Matrix& m) { return smith_normal_form(m).rank; }

bool columns_dependent(const Matrix& m) { return rank(m) < m.cols(); }

Lattice::Lattice(const Matrix& generators)
    : gens_(generators), snf_(smith_normal_form(generators)), dim_(generators.rows()) {}

bool Lattice::contains(std::span<const Int> v) const { return solve(v).has_value(); }

std::optional<IntVec> Lattice::solve(std::span<const Int> v) const {
  if (v.size() != dim_) throw ShapeError("lattice membership: vector length mismatch");
  IntVec y = multiply(snf_.U, v);
  IntVec x(gens_.cols(), 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i < snf_.rank) {
      Int d = snf_.D(i, i);
      if (y[i] % d != 0) return std::nullopt;
      x[i] = y[i] / d;
    } else if (y[i] != 0) {
      return std::nullopt;
    }
  }
  return multiply(snf_.V, x);
}

bool membership(const Matrix& m, std::span<const Int> v) { return Lattice(m).contains(v); }

}  // namespace cayleychi
