#include "cayleychi/normalform.hpp"

#include <algorithm>

namespace cayleychi {

std::string to_string(ShapeClass s) {
  switch (s) {
    case ShapeClass::Row1xR:
      return "Row1xR";
    case ShapeClass::Lower2x2:
      return "Lower2x2";
    case ShapeClass::Mhnf3x2:
      return "Mhnf3x2";
    case ShapeClass::Unsupported:
      return "Unsupported";
  }
  return "Unsupported";
}

namespace {

// A matrix that logs every elementary step applied to it.
struct Recorder {
  Matrix m;
  Transcript t;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    m.swap_rows(i, j);
    t.push({OpKind::SwapRows, i, j, 0});
  }
  void negate_row(std::size_t i) {
    m.negate_row(i);
    t.push({OpKind::NegateRow, i, 0, 0});
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    m.swap_cols(i, j);
    t.push({OpKind::SwapCols, i, j, 0});
  }
  void negate_col(std::size_t i) {
    m.negate_col(i);
    t.push({OpKind::NegateCol, i, 0, 0});
  }
  void add_col(std::size_t target, std::size_t source, Int k) {
    if (k == 0) return;
    m.add_col_multiple(target, source, k);
    t.push({OpKind::AddColMultiple, target, source, k});
  }
  void delete_zero_row(std::size_t i) {
    m.erase_row(i);
    t.push({OpKind::DeleteZeroRow, i, 0, 0});
  }
  void delete_zero_col(std::size_t i) {
    m.erase_col(i);
    t.push({OpKind::DeleteZeroCol, i, 0, 0});
  }
  void append_zero_col() {
    IntVec z(m.rows(), 0);
    m.append_col(z);
    t.push({OpKind::AppendZeroCol, 0, 0, 0});
  }

  // Column Euclid on row `r` between columns 0 and 1 until (r, 1) is zero.
  void euclid_top(std::size_t r) {
    while (m(r, 1) != 0) {
      if (m(r, 0) != 0) add_col(1, 0, checked::neg(m(r, 1) / m(r, 0)));
      if (m(r, 1) != 0) swap_cols(0, 1);
    }
  }

  // Shift col 0 by multiples of col 1 so that entry (r, 0) lands in
  // [-|b|/2, 0] where b = (r, 1) is nonzero, then restore y11 > 0.
  void center_against(std::size_t r) {
    const Int b = m(r, 1);
    const Int sb = b > 0 ? 1 : -1;
    const Int ab = checked::abs(b);
    const Int a = m(r, 0);
    // q = ceil(a / |b|), so a - q|b| lies in (-|b|, 0].
    Int q = a / ab;
    if (a % ab > 0) q = checked::add(q, 1);
    add_col(0, 1, checked::mul(checked::neg(q), sb));
    if (checked::mul(2, m(r, 0)) < -ab) {
      add_col(0, 1, sb);
      negate_col(0);
      negate_row(0);
    }
  }
};

Int mod3(Int x) { return mod(x, 3); }

}  // namespace

Normalized lower_triangular_2x2(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("lower_triangular_2x2: expected a 2x2 matrix");
  Recorder rec{m, {}};
  rec.euclid_top(0);
  if (rec.m(0, 0) < 0) rec.negate_col(0);
  if (rec.m(1, 1) < 0) rec.negate_col(1);
  return {std::move(rec.m), std::move(rec.t)};
}

std::array<bool, 6> mhnf_conditions(const Matrix& m) {
  if (m.rows() != 3 || m.cols() != 2) throw ShapeError("mhnf_conditions: expected a 3x2 matrix");
  const Int y11 = m(0, 0), y12 = m(0, 1), y21 = m(1, 0), y22 = m(1, 1), y31 = m(2, 0), y32 = m(2, 1);
  std::array<bool, 6> c{};
  c[0] = y11 > 0;
  c[1] = y12 == 0;
  c[2] = mod3(checked::sub(checked::mul(y11, y22), checked::mul(y11, y32))) == 0;
  c[3] = y22 <= y32;
  c[4] = checked::abs(y22) <= checked::abs(y32);
  auto centered = [](Int x, Int b) { return x <= 0 && checked::mul(2, x) >= checked::neg(checked::abs(b)); };
  c[5] = (y22 == 0 && centered(y31, y32)) || centered(y21, y22);
  return c;
}

bool is_mhnf(const Matrix& m) {
  auto c = mhnf_conditions(m);
  return std::all_of(c.begin(), c.end(), [](bool b) { return b; });
}

Normalized mhnf_3x2(const Matrix& m) {
  if (m.rows() != 3 || m.cols() != 2) throw ShapeError("mhnf_3x2: expected a 3x2 matrix");
  for (std::size_t i = 0; i < 3; ++i)
    if (m.is_zero_row(i)) throw PreconditionError("mhnf_3x2: matrix has a zero row");
  if (columns_dependent(m)) throw PreconditionError("mhnf_3x2: columns are linearly dependent");
  if (is_mhnf(m)) return {m, {}};

  Recorder rec{m, {}};

  // Step Zero: bring to the top the row shared by two minors that agree up to
  // sign mod 3; then make the two minors through that row congruent.
  const Minors3x2 mn = minors_3x2(m);
  struct Pair {
    Int x, y;
    std::size_t top;
  };
  const std::array<Pair, 3> pairs{{{mn.rows12, mn.rows13, 0}, {mn.rows12, mn.rows23, 1}, {mn.rows13, mn.rows23, 2}}};
  std::size_t top = 0;
  for (const auto& p : pairs) {
    if (mod3(p.x) == mod3(p.y) || mod3(p.x) == mod3(checked::neg(p.y))) {
      top = p.top;
      break;
    }
  }
  // Permutation (top, remaining rows ascending) realized by adjacent swaps.
  for (std::size_t i = top; i > 0; --i) rec.swap_rows(i, i - 1);
  {
    const Minors3x2 now = minors_3x2(rec.m);
    if (mod3(now.rows12) != mod3(now.rows13)) rec.negate_row(2);
  }

  // Step One.
  for (std::size_t c = 0; c < 2; ++c)
    if (rec.m(0, c) < 0) rec.negate_col(c);
  // Step Two.
  if (rec.m(0, 0) == 0) rec.swap_cols(0, 1);
  // Step Three.
  rec.euclid_top(0);
  if (rec.m(0, 0) < 0) rec.negate_col(0);

  // Step Four.
  auto ordered = [](const Matrix& x) {
    return x(1, 1) <= x(2, 1) && checked::abs(x(1, 1)) <= checked::abs(x(2, 1));
  };
  if (!ordered(rec.m)) {
    Matrix swapped = rec.m;
    swapped.swap_rows(1, 2);
    Matrix negated = rec.m;
    negated.negate_col(1);
    if (ordered(swapped)) {
      rec.swap_rows(1, 2);
    } else if (ordered(negated)) {
      rec.negate_col(1);
    } else {
      rec.swap_rows(1, 2);
      rec.negate_col(1);
    }
  }

  // Steps Five and Six.
  rec.center_against(rec.m(1, 1) != 0 ? 1 : 2);

  if (!is_mhnf(rec.m)) throw std::logic_error("mhnf_3x2: result violates MHNF conditions: " + to_string(rec.m));
  return {std::move(rec.m), std::move(rec.t)};
}

namespace {

// Column elimination to echelon form: on each row, Euclid among the columns
// not yet fixed, always pivoting on the smallest nonzero magnitude.
std::size_t echelon_columns(Recorder& rec) {
  std::size_t p = 0;
  for (std::size_t i = 0; i < rec.m.rows() && p < rec.m.cols(); ++i) {
    for (;;) {
      std::size_t piv = rec.m.cols();
      std::size_t nonzero = 0;
      for (std::size_t j = p; j < rec.m.cols(); ++j) {
        if (rec.m(i, j) == 0) continue;
        ++nonzero;
        if (piv == rec.m.cols() || checked::abs(rec.m(i, j)) < checked::abs(rec.m(i, piv))) piv = j;
      }
      if (nonzero == 0) break;
      if (nonzero == 1) {
        rec.swap_cols(p, piv);
        ++p;
        break;
      }
      for (std::size_t j = p; j < rec.m.cols(); ++j)
        if (j != piv && rec.m(i, j) != 0) rec.add_col(j, piv, checked::neg(rec.m(i, j) / rec.m(i, piv)));
    }
  }
  return p;
}

}  // namespace

ReducedForm reduce(const Matrix& m) {
  if (m.empty()) throw ShapeError("reduce: empty matrix");
  ReducedForm out;
  Recorder rec{m, {}};

  for (std::size_t i = rec.m.rows(); i-- > 0;) {
    if (rec.m.rows() > 1 && rec.m.is_zero_row(i)) {
      rec.delete_zero_row(i);
      ++out.deleted_zero_rows;
    }
  }

  const std::size_t rows = rec.m.rows();
  if (rows == 1) {
    out.shape_class = ShapeClass::Row1xR;
  } else {
    if (columns_dependent(rec.m)) {
      const std::size_t rk = echelon_columns(rec);
      // A 2-row matrix of rank 1 keeps one zero column as its second column.
      const std::size_t keep = (rows == 2 && rk == 1) ? 2 : rk;
      while (rec.m.cols() > keep) rec.delete_zero_col(rec.m.cols() - 1);
    }
    if (rows == 2 && rec.m.cols() == 1) rec.append_zero_col();

    const std::size_t cols = rec.m.cols();
    if (rows == 2 && cols == 2) {
      Normalized lt = lower_triangular_2x2(rec.m);
      rec.m = std::move(lt.matrix);
      rec.t.append(lt.transcript);
      out.shape_class = ShapeClass::Lower2x2;
    } else if (rows == 3 && cols == 2) {
      Normalized h = mhnf_3x2(rec.m);
      rec.m = std::move(h.matrix);
      rec.t.append(h.transcript);
      out.shape_class = ShapeClass::Mhnf3x2;
    } else {
      out.shape_class = ShapeClass::Unsupported;
      out.reason = (cols == 1 && rows >= 3) ? kReasonTomatoCage : kReasonOutOfScope;
    }
  }
  out.matrix = std::move(rec.m);
  out.transcript = std::move(rec.t);
  return out;
}

}  // namespace cayleychi
